use crate::raster::BinaryMask;

/// How erosion treats pixels beyond the raster edge.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Border {
    /// Outside counts as unset, so masks also shrink away from the edges.
    #[default]
    Background,
    /// Only in-bounds neighbours are considered.
    Ignore,
}

/// Binary erosion by a disc of `radius` pixels (offsets with `dx² + dy² <= r²`).
/// Outside the raster counts as unset. Radius 0 returns the input.
pub fn erode(mask: &BinaryMask, radius: usize) -> BinaryMask {
    erode_with(mask, radius, Border::Background)
}

/// [`erode`] with an explicit border policy.
pub fn erode_with(mask: &BinaryMask, radius: usize, border: Border) -> BinaryMask {
    if radius == 0 {
        return mask.clone();
    }
    let (w, h) = mask.dims();
    // Per-row prefix counts of unset pixels.
    let mut holes = vec![0u32; h * (w + 1)];
    for y in 0..h {
        let row = &mut holes[y * (w + 1)..(y + 1) * (w + 1)];
        for x in 0..w {
            row[x + 1] = row[x] + u32::from(!mask.get(x, y));
        }
    }
    let r = radius as isize;
    let half_widths: Vec<isize> = (-r..=r)
        .map(|dy| ((r * r - dy * dy) as f64).sqrt().floor() as isize)
        .collect();

    let survives = |x: usize, y: usize| -> bool {
        for (k, &hw) in half_widths.iter().enumerate() {
            let yy = y as isize + k as isize - r;
            if yy < 0 || yy >= h as isize {
                if border == Border::Background {
                    return false;
                }
                continue;
            }
            let lo = x as isize - hw;
            let hi = x as isize + hw;
            if (lo < 0 || hi >= w as isize) && border == Border::Background {
                return false;
            }
            let lo = lo.max(0) as usize;
            let hi = hi.min(w as isize - 1) as usize;
            let row = &holes[yy as usize * (w + 1)..];
            if row[hi + 1] != row[lo] {
                return false;
            }
        }
        true
    };

    let data = (0..h)
        .flat_map(|y| (0..w).map(move |x| (x, y)))
        .map(|(x, y)| mask.get(x, y) && survives(x, y))
        .collect();
    BinaryMask::from_parts(w, h, data)
}
