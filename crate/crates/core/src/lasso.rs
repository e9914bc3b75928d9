use std::collections::BTreeSet;
use std::fmt;

/// The ultimately periodic word `stem · cycle^ω`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lasso {
    pub stem: Vec<BTreeSet<String>>,
    pub cycle: Vec<BTreeSet<String>>,
}

impl Lasso {
    /// Panics if `cycle` is empty.
    pub fn new(stem: Vec<BTreeSet<String>>, cycle: Vec<BTreeSet<String>>) -> Lasso {
        assert!(!cycle.is_empty(), "lasso cycle must be non-empty");
        Lasso { stem, cycle }
    }

    /// Decodes bitmask letters over `ap`.
    pub fn from_letters(ap: &[String], stem: &[u32], cycle: &[u32]) -> Lasso {
        let decode = |l: &u32| -> BTreeSet<String> {
            ap.iter()
                .enumerate()
                .filter(|(i, _)| l >> i & 1 == 1)
                .map(|(_, a)| a.clone())
                .collect()
        };
        Lasso::new(
            stem.iter().map(decode).collect(),
            cycle.iter().map(decode).collect(),
        )
    }

    /// The letter at position `i` of the infinite word.
    pub fn letter(&self, i: usize) -> &BTreeSet<String> {
        if i < self.stem.len() {
            &self.stem[i]
        } else {
            &self.cycle[(i - self.stem.len()) % self.cycle.len()]
        }
    }

    /// The same word with the first cycle letter moved into the stem.
    pub fn rotated(&self) -> Lasso {
        let mut stem = self.stem.clone();
        stem.push(self.cycle[0].clone());
        let mut cycle = self.cycle[1..].to_vec();
        cycle.push(self.cycle[0].clone());
        Lasso { stem, cycle }
    }

    pub fn len(&self) -> usize {
        self.stem.len() + self.cycle.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

fn write_letter(f: &mut fmt::Formatter<'_>, letter: &BTreeSet<String>) -> fmt::Result {
    write!(f, "{{")?;
    for (i, p) in letter.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{p}")?;
    }
    write!(f, "}}")
}

/// `u = {a}{}, v = {a,b}`
impl fmt::Display for Lasso {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "u = ")?;
        if self.stem.is_empty() {
            write!(f, "ε")?;
        }
        for l in &self.stem {
            write_letter(f, l)?;
        }
        write!(f, ", v = ")?;
        for l in &self.cycle {
            write_letter(f, l)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_wrap_around() {
        let ap = vec!["a".to_string(), "b".to_string()];
        let l = Lasso::from_letters(&ap, &[1], &[2, 3]);
        assert!(l.letter(0).contains("a"));
        assert_eq!(l.letter(3), l.letter(1));
        assert_eq!(l.to_string(), "u = {a}, v = {b}{a,b}");
        let r = l.rotated();
        for i in 0..8 {
            assert_eq!(l.letter(i), r.letter(i));
        }
    }
}
