//! Stable vertex labels for graphs.
//!
//! Labels are structured so that homomorphism formulas can pattern-match on
//! them (a Kneser vertex is a [`Label::Subset`], a Mycielski copy is a
//! [`Label::Level`]). Their text form is what appears in JSON files:
//!
//! * `7`: a plain index
//! * `{1,3}`: a sorted subset of `[n]`
//! * `z`: the universal vertex of a generalized Mycielskian
//! * `v^2`: the copy of `v` at level 2; nested bases are parenthesized,
//!   e.g. `(3^2)^1`

use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Index(u64),
    Subset(Vec<u32>),
    Level(Box<Label>, u32),
    Apex,
}

impl Label {
    pub fn level(base: Label, level: u32) -> Self {
        Label::Level(Box::new(base), level)
    }

    pub fn subset(elements: impl IntoIterator<Item = u32>) -> Self {
        let mut v: Vec<u32> = elements.into_iter().collect();
        v.sort_unstable();
        Label::Subset(v)
    }

    pub fn as_subset(&self) -> Option<&[u32]> {
        match self {
            Label::Subset(s) => Some(s),
            _ => None,
        }
    }

    /// Splits a levelled label into its base and level.
    pub fn as_level(&self) -> Option<(&Label, u32)> {
        match self {
            Label::Level(b, i) => Some((b, *i)),
            _ => None,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Index(i) => write!(f, "{i}"),
            Label::Subset(s) => {
                write!(f, "{{")?;
                for (i, a) in s.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, "}}")
            }
            Label::Level(b, i) => match **b {
                Label::Level(..) => write!(f, "({b})^{i}"),
                _ => write!(f, "{b}^{i}"),
            },
            Label::Apex => write!(f, "z"),
        }
    }
}

impl FromStr for Label {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser {
            s: s.as_bytes(),
            pos: 0,
        };
        let label = p.label()?;
        if p.pos != p.s.len() {
            return Err(p.err("trailing characters"));
        }
        Ok(label)
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!(
            "label {:?}: {what} at offset {}",
            String::from_utf8_lossy(self.s),
            self.pos
        ))
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn number(&mut self) -> Result<u64> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("number out of range"))
    }

    fn label(&mut self) -> Result<Label> {
        let mut base = match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.label()?;
                self.eat(b')')?;
                inner
            }
            Some(b'{') => {
                self.pos += 1;
                let mut elems = Vec::new();
                if self.peek() != Some(b'}') {
                    loop {
                        let n = self.number()?;
                        elems.push(u32::try_from(n).map_err(|_| self.err("element out of range"))?);
                        if self.peek() == Some(b',') {
                            self.pos += 1;
                        } else {
                            break;
                        }
                    }
                }
                self.eat(b'}')?;
                if elems.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(self.err("subset elements must be strictly increasing"));
                }
                Label::Subset(elems)
            }
            Some(b'z') => {
                self.pos += 1;
                Label::Apex
            }
            Some(b'0'..=b'9') => Label::Index(self.number()?),
            _ => return Err(self.err("expected a label")),
        };
        while self.peek() == Some(b'^') {
            self.pos += 1;
            let lvl = self.number()?;
            base = Label::level(
                base,
                u32::try_from(lvl).map_err(|_| self.err("level out of range"))?,
            );
        }
        Ok(base)
    }
}

impl serde::Serialize for Label {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Label {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn display_forms() {
        assert_eq!(Label::Index(4).to_string(), "4");
        assert_eq!(Label::subset([3, 1]).to_string(), "{1,3}");
        assert_eq!(Label::Apex.to_string(), "z");
        assert_eq!(Label::level(Label::Index(3), 2).to_string(), "3^2");
        assert_eq!(
            Label::level(Label::level(Label::Index(3), 2), 1).to_string(),
            "(3^2)^1"
        );
        assert_eq!(Label::level(Label::Apex, 2).to_string(), "z^2");
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "x", "{3,1}", "3^", "(3", "{1,2", "3)"] {
            assert!(bad.parse::<Label>().is_err(), "{bad:?} parsed");
        }
        assert_eq!(
            "3^2^1".parse::<Label>().unwrap(),
            "(3^2)^1".parse().unwrap()
        );
    }

    fn arb_label() -> impl Strategy<Value = Label> {
        let leaf = prop_oneof![
            (0u64..1000).prop_map(Label::Index),
            proptest::collection::btree_set(1u32..20, 0..5).prop_map(Label::subset),
            Just(Label::Apex),
        ];
        leaf.prop_recursive(3, 8, 1, |inner| {
            (inner, 1u32..6).prop_map(|(b, i)| Label::level(b, i))
        })
    }

    proptest! {
        #[test]
        fn text_form_round_trips(l in arb_label()) {
            prop_assert_eq!(l.to_string().parse::<Label>().unwrap(), l);
        }
    }
}
