use core::cmp::Ordering;
use core::fmt;

use crate::{Error, Result};

/// Hard cap on the number of polynomial variables.
pub const MAX_VARS: usize = 3;

const ALPHABET: &[u8] = b"xyzt";

/// Ordered list of single-letter variable names drawn from `x, y, z, t`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vars {
    names: [u8; MAX_VARS],
    len: u8,
}

impl Vars {
    /// `Vars::new("xy")` is the variable list of `Q[x, y]`.
    pub fn new(names: &str) -> Result<Self> {
        let bytes = names.as_bytes();
        if bytes.len() > MAX_VARS {
            return Err(Error::pre(alloc::format!(
                "at most {MAX_VARS} variables are supported"
            )));
        }
        let mut out = [0u8; MAX_VARS];
        for (i, &b) in bytes.iter().enumerate() {
            if !ALPHABET.contains(&b) || bytes[..i].contains(&b) {
                return Err(Error::pre(alloc::format!("bad variable list {names:?}")));
            }
            out[i] = b;
        }
        Ok(Vars {
            names: out,
            len: bytes.len() as u8,
        })
    }

    pub fn none() -> Self {
        Vars {
            names: [0; MAX_VARS],
            len: 0,
        }
    }

    pub fn xy() -> Self {
        Vars::new("xy").unwrap()
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn name(&self, i: usize) -> char {
        self.names[i] as char
    }

    pub fn index_of(&self, c: char) -> Option<usize> {
        self.names[..self.len()]
            .iter()
            .position(|&b| b as char == c)
    }

    pub fn iter(&self) -> impl Iterator<Item = char> + '_ {
        self.names[..self.len()].iter().map(|&b| b as char)
    }
}

impl fmt::Display for Vars {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Vars {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Vars({self})")
    }
}

/// Exponent vector; slots past the ring's variable count stay zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Debug)]
pub struct Monomial(pub [u32; MAX_VARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; MAX_VARS]);

    pub fn var(i: usize) -> Self {
        let mut e = [0; MAX_VARS];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0 == [0; MAX_VARS]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0) {
            *a += b;
        }
        Monomial(e)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0).all(|(a, b)| *a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let mut e = other.0;
        for (a, b) in e.iter_mut().zip(self.0) {
            *a -= b;
        }
        Some(Monomial(e))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0) {
            *a = (*a).max(b);
        }
        Monomial(e)
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0).all(|(a, b)| *a == 0 || b == 0)
    }

    /// Index of the single variable if this is a pure power `x_i^k`, `k >= 1`.
    pub fn pure_power_of(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum OrderKind {
    Lex,
    GrevLex,
}

/// A monomial order together with a variable priority: `priority[0]` is
/// the most significant variable.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    priority: [u8; MAX_VARS],
}

impl MonomialOrder {
    pub fn lex() -> Self {
        MonomialOrder {
            kind: OrderKind::Lex,
            priority: [0, 1, 2],
        }
    }

    pub fn grevlex() -> Self {
        MonomialOrder {
            kind: OrderKind::GrevLex,
            priority: [0, 1, 2],
        }
    }

    /// `priority` must be a permutation of `0..priority.len()`.
    pub fn with_priority(kind: OrderKind, priority: &[usize]) -> Result<Self> {
        let mut p = [0u8; MAX_VARS];
        let mut seen = [false; MAX_VARS];
        if priority.len() > MAX_VARS {
            return Err(Error::pre("priority longer than the variable cap"));
        }
        for (slot, &v) in priority.iter().enumerate() {
            if v >= priority.len() || seen[v] {
                return Err(Error::pre("priority is not a permutation"));
            }
            seen[v] = true;
            p[slot] = v as u8;
        }
        // unused slots keep their natural order behind the listed ones
        for (v, slot) in p.iter_mut().enumerate().skip(priority.len()) {
            *slot = v as u8;
        }
        Ok(MonomialOrder { kind, priority: p })
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.kind {
            OrderKind::Lex => {
                for &i in &self.priority {
                    match a.0[i as usize].cmp(&b.0[i as usize]) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            OrderKind::GrevLex => match a.degree().cmp(&b.degree()) {
                Ordering::Equal => {
                    for &i in self.priority.iter().rev() {
                        match a.0[i as usize].cmp(&b.0[i as usize]) {
                            Ordering::Equal => continue,
                            o => return o.reverse(),
                        }
                    }
                    Ordering::Equal
                }
                o => o,
            },
        }
    }
}

impl Default for MonomialOrder {
    fn default() -> Self {
        MonomialOrder::grevlex()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: [u32; 3]) -> Monomial {
        Monomial(e)
    }

    #[test]
    fn orders() {
        let lex = MonomialOrder::lex();
        let grevlex = MonomialOrder::grevlex();
        // x > y^5 in lex, not in grevlex
        assert_eq!(lex.compare(&m([1, 0, 0]), &m([0, 5, 0])), Ordering::Greater);
        assert_eq!(
            grevlex.compare(&m([1, 0, 0]), &m([0, 5, 0])),
            Ordering::Less
        );
        // x*z vs y^2 in grevlex: same degree, smaller z-exponent wins
        assert_eq!(
            grevlex.compare(&m([0, 2, 0]), &m([1, 0, 1])),
            Ordering::Greater
        );
        let ylex = MonomialOrder::with_priority(OrderKind::Lex, &[1, 0]).unwrap();
        assert_eq!(ylex.compare(&m([1, 0, 0]), &m([0, 1, 0])), Ordering::Less);
        assert!(MonomialOrder::with_priority(OrderKind::Lex, &[0, 0]).is_err());
    }

    #[test]
    fn vars() {
        let v = Vars::new("xyt").unwrap();
        assert_eq!(v.index_of('t'), Some(2));
        assert!(Vars::new("xx").is_err());
        assert!(Vars::new("xyzt").is_err());
        assert!(Vars::new("q").is_err());
    }
}
