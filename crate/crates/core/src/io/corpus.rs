//! Problem files shipped with the crate.

use super::parse::{parse, ProblemFile};

pub struct CorpusEntry {
    pub name: &'static str,
    pub file: &'static str,
    pub source: &'static str,
}

impl CorpusEntry {
    pub fn problem(&self) -> ProblemFile {
        parse(self.source).expect("bundled files parse")
    }

    /// First comment line of the file.
    pub fn description(&self) -> &'static str {
        self.source
            .lines()
            .find_map(|l| l.strip_prefix('#'))
            .map_or("", str::trim)
    }
}

macro_rules! entry {
    ($name:literal) => {
        CorpusEntry {
            name: $name,
            file: concat!($name, ".orb"),
            source: include_str!(concat!("../../corpus/", $name, ".orb")),
        }
    };
}

static ENTRIES: [CorpusEntry; 9] = [
    entry!("abelian_r3"),
    entry!("heisenberg_yz"),
    entry!("heisenberg_x"),
    entry!("heisenberg_z"),
    entry!("h5_y1y2"),
    entry!("axb_f1"),
    entry!("axb_f0"),
    entry!("diagonal_1_2"),
    entry!("grelaud"),
];

pub fn entries() -> &'static [CorpusEntry] {
    &ENTRIES
}

pub fn get(name: &str) -> Option<&'static CorpusEntry> {
    let name = name.strip_suffix(".orb").unwrap_or(name);
    ENTRIES.iter().find(|e| e.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse::serialize;

    #[test]
    fn all_parse_and_round_trip() {
        for e in entries() {
            let p = e.problem();
            assert_eq!(parse(&serialize(&p)).unwrap(), p, "{}", e.name);
            assert_eq!(serialize(&parse(&serialize(&p)).unwrap()), serialize(&p));
            assert!(!e.description().is_empty());
        }
        assert!(get("axb_f1.orb").is_some());
        assert!(get("nope").is_none());
    }
}
