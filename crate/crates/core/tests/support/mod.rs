pub mod maps;
pub mod oracle;
