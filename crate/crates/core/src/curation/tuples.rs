use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::{Error, Result};

const MAX_SHUFFLES: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Category {
    Top,
    Dress,
}

impl Category {
    pub fn as_str(self) -> &'static str {
        match self {
            Category::Top => "top",
            Category::Dress => "dress",
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Category {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "top" => Ok(Category::Top),
            "dress" => Ok(Category::Dress),
            _ => Err(Error::Format(format!("unknown category {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TestTuple {
    pub person: String,
    pub garment: String,
    pub category: Category,
}

/// Pairs every person with the garment of a different list member.
///
/// The pairing is a seeded shuffle, redrawn until no id maps to itself. After
/// 100 failed draws it falls back to pairing each id with the next one.
pub fn make_test_tuples(ids: &[String], category: Category, seed: u64) -> Result<Vec<TestTuple>> {
    if ids.len() < 2 {
        return Err(Error::TooFewIds(ids.len()));
    }
    let mut seen = HashSet::with_capacity(ids.len());
    for id in ids {
        if !seen.insert(id.as_str()) {
            return Err(Error::DuplicateId(id.clone()));
        }
    }
    let n = ids.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..n).collect();
    let mut found = false;
    for _ in 0..MAX_SHUFFLES {
        perm.shuffle(&mut rng);
        if perm.iter().enumerate().all(|(i, &p)| i != p) {
            found = true;
            break;
        }
    }
    if !found {
        perm = (0..n).map(|i| (i + 1) % n).collect();
    }
    Ok(ids
        .iter()
        .zip(&perm)
        .map(|(person, &g)| TestTuple {
            person: person.clone(),
            garment: ids[g].clone(),
            category,
        })
        .collect())
}

/// `person<TAB>garment<TAB>category` lines with a header.
pub fn render_tuples(tuples: &[TestTuple]) -> String {
    let mut out = String::from("person\tgarment\tcategory\n");
    for t in tuples {
        out.push_str(&format!("{}\t{}\t{}\n", t.person, t.garment, t.category));
    }
    out
}

pub fn parse_tuples(text: &str) -> Result<Vec<TestTuple>> {
    let mut lines = text.lines();
    if lines.next() != Some("person\tgarment\tcategory") {
        return Err(Error::Format("missing tuple header".into()));
    }
    lines
        .filter(|l| !l.is_empty())
        .map(|l| {
            let f: Vec<&str> = l.split('\t').collect();
            let [person, garment, category] = f.as_slice() else {
                return Err(Error::Format(format!("bad tuple line {l:?}")));
            };
            Ok(TestTuple {
                person: person.to_string(),
                garment: garment.to_string(),
                category: category.parse()?,
            })
        })
        .collect()
}
