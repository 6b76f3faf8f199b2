use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Default ceiling on any single exponent.
pub const DEFAULT_MAX_EXPONENT: u32 = 1 << 16;

/// Monomial orders supported by the library.
///
/// `Block(k)` compares the first `k` variables by grevlex and breaks ties
/// with grevlex on the remaining ones, so it eliminates the first block.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    Grevlex,
    Block(usize),
}

impl MonomialOrder {
    pub fn compare(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            MonomialOrder::Lex => lex(a, b),
            MonomialOrder::Grevlex => grevlex(a, b),
            MonomialOrder::Block(k) => {
                let k = (*k).min(a.len());
                grevlex(&a[..k], &b[..k]).then_with(|| grevlex(&a[k..], &b[k..]))
            }
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::Lex => f.write_str("lex"),
            MonomialOrder::Grevlex => f.write_str("grevlex"),
            MonomialOrder::Block(k) => write!(f, "block({k})"),
        }
    }
}

fn lex(a: &[u32], b: &[u32]) -> Ordering {
    a.cmp(b)
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

struct RingData {
    vars: Vec<String>,
    order: MonomialOrder,
    max_exponent: u32,
}

/// A polynomial ring over the rationals: named variables plus the active
/// monomial order. Cheap to clone.
#[derive(Clone)]
pub struct Ring(Arc<RingData>);

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Ring {
    /// A grevlex ring over the given variables.
    pub fn new<S: AsRef<str>>(vars: &[S]) -> Result<Ring> {
        Ring::with_order(vars, MonomialOrder::Grevlex)
    }

    pub fn with_order<S: AsRef<str>>(vars: &[S], order: MonomialOrder) -> Result<Ring> {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            if !is_identifier(v) {
                return Err(Error::InvalidRing(format!("`{v}` is not an identifier")));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidRing(format!("duplicate variable `{v}`")));
            }
        }
        if let MonomialOrder::Block(k) = order {
            if k > vars.len() {
                return Err(Error::InvalidRing(format!(
                    "block({k}) on a ring with {} variables",
                    vars.len()
                )));
            }
        }
        Ok(Ring(Arc::new(RingData {
            vars,
            order,
            max_exponent: DEFAULT_MAX_EXPONENT,
        })))
    }

    /// Same variables, different order.
    pub fn reordered(&self, order: MonomialOrder) -> Result<Ring> {
        if order == self.0.order {
            return Ok(self.clone());
        }
        Ring::with_order(&self.0.vars, order).map(|r| r.with_max_exponent(self.0.max_exponent))
    }

    pub fn with_max_exponent(&self, limit: u32) -> Ring {
        Ring(Arc::new(RingData {
            vars: self.0.vars.clone(),
            order: self.0.order.clone(),
            max_exponent: limit,
        }))
    }

    pub fn vars(&self) -> &[String] {
        &self.0.vars
    }

    pub fn nvars(&self) -> usize {
        self.0.vars.len()
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.0.order
    }

    pub fn max_exponent(&self) -> u32 {
        self.0.max_exponent
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.vars.iter().position(|v| v == name)
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.var_index(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub(crate) fn cmp_exps(&self, a: &[u32], b: &[u32]) -> Ordering {
        self.0.order.compare(a, b)
    }

    /// A name based on `base` that is not already a variable of this ring,
    /// nor in `taken`.
    pub fn fresh_name(&self, base: &str, taken: &[String]) -> String {
        let mut name = base.to_string();
        while self.var_index(&name).is_some() || taken.contains(&name) {
            name.push('_');
        }
        name
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Ring) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.vars == other.0.vars
                && self.0.order == other.0.order
                && self.0.max_exponent == other.0.max_exponent)
    }
}

impl Eq for Ring {}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QQ[{}; {}]", self.0.vars.join(", "), self.0.order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grevlex_breaks_ties_on_last_variable() {
        // x*z < y^2 in grevlex with x > y > z
        let o = MonomialOrder::Grevlex;
        assert_eq!(o.compare(&[1, 0, 1], &[0, 2, 0]), Ordering::Less);
        assert_eq!(o.compare(&[0, 0, 3], &[1, 0, 0]), Ordering::Greater);
        assert_eq!(
            MonomialOrder::Lex.compare(&[0, 0, 3], &[1, 0, 0]),
            Ordering::Less
        );
    }

    #[test]
    fn block_order_eliminates_first_block() {
        let o = MonomialOrder::Block(1);
        assert_eq!(o.compare(&[1, 0], &[0, 5]), Ordering::Greater);
        assert_eq!(o.compare(&[1, 1], &[1, 0]), Ordering::Greater);
    }

    #[test]
    fn rejects_bad_variables() {
        assert!(Ring::new(&["x", "x"]).is_err());
        assert!(Ring::new(&["1x"]).is_err());
        assert!(Ring::with_order(&["x"], MonomialOrder::Block(2)).is_err());
    }
}
