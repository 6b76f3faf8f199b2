use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::ring::{MonomialOrder, Ring};
use super::Rational;
use crate::error::{Error, Result};

pub type Term = (Monomial, Rational);

/// Sparse distributed polynomial over the rationals.
///
/// Terms are kept strictly decreasing in the ring's monomial order with no
/// zero coefficients, so two polynomials are equal iff their term lists are.
#[derive(Clone)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<Term>,
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Polynomial {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Ring) -> Polynomial {
        Polynomial::constant(ring, Rational::one())
    }

    pub fn constant(ring: &Ring, c: Rational) -> Polynomial {
        let mut p = Polynomial::zero(ring);
        if !c.is_zero() {
            p.terms.push((Monomial::one(ring.nvars()), c));
        }
        p
    }

    pub fn from_int(ring: &Ring, c: i64) -> Polynomial {
        Polynomial::constant(ring, Rational::from_integer(BigInt::from(c)))
    }

    /// The variable with the given index. Panics if out of range.
    pub fn var(ring: &Ring, index: usize) -> Polynomial {
        Polynomial {
            ring: ring.clone(),
            terms: vec![(Monomial::var(ring.nvars(), index), Rational::one())],
        }
    }

    pub fn variable(ring: &Ring, name: &str) -> Result<Polynomial> {
        Ok(Polynomial::var(ring, ring.index_of(name)?))
    }

    /// Builds a canonical polynomial from arbitrary terms: sorts, merges equal
    /// monomials and drops zeros.
    pub fn from_terms<I: IntoIterator<Item = Term>>(ring: &Ring, terms: I) -> Polynomial {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.0.len(), ring.nvars());
            if c.is_zero() {
                continue;
            }
            match acc.get_mut(&m) {
                Some(v) => *v += c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<Term> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| ring.cmp_exps(&b.0 .0, &a.0 .0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Wraps terms that are already canonical for `ring`.
    pub(crate) fn from_sorted(ring: &Ring, terms: Vec<Term>) -> Polynomial {
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.cmp_exps(&w[0].0 .0, &w[1].0 .0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub(crate) fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// The value of a constant polynomial (zero included).
    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self.terms.as_slice(), [(m, c)] if m.is_one() && c.is_one())
    }

    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.terms.first().map(|(_, c)| c)
    }

    /// Total degree; the zero polynomial has degree 0.
    pub fn total_degree(&self) -> u64 {
        self.terms
            .iter()
            .map(|(m, _)| m.degree())
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.0[var]).max().unwrap_or(0)
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.0[var] > 0)
    }

    /// Indices of the variables that occur in some term.
    pub fn variables(&self) -> Vec<usize> {
        (0..self.ring.nvars())
            .filter(|&v| self.uses_var(v))
            .collect()
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    fn check_exponents(&self) -> Result<()> {
        let limit = self.ring.max_exponent();
        if self.terms.iter().any(|(m, _)| m.max_exponent() > limit) {
            Err(Error::ExponentOverflow { limit })
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.add_scaled(other, &Rational::one(), None))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.add_scaled(other, &-Rational::one(), None))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let p = self.mul_unchecked(other);
        p.check_exponents()?;
        Ok(p)
    }

    pub fn pow(&self, e: u32) -> Result<Polynomial> {
        let limit = self.ring.max_exponent() as u64;
        if self
            .terms
            .iter()
            .any(|(m, _)| m.max_exponent() as u64 * e as u64 > limit)
        {
            return Err(Error::ExponentOverflow {
                limit: self.ring.max_exponent(),
            });
        }
        let mut result = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        Ok(result)
    }

    /// `self + c * m * other` by a single merge pass.
    pub(crate) fn add_scaled(
        &self,
        other: &Polynomial,
        c: &Rational,
        m: Option<&Monomial>,
    ) -> Polynomial {
        let ring = &self.ring;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other
            .terms
            .iter()
            .map(|(bm, bc)| {
                let mono = match m {
                    Some(m) => bm.mul(m),
                    None => bm.clone(),
                };
                (mono, bc * c)
            })
            .peekable();
        loop {
            let ord = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some(x), Some(y)) => ring.cmp_exps(&x.0 .0, &y.0 .0),
            };
            match ord {
                Ordering::Greater => out.push(a.next().unwrap().clone()),
                Ordering::Less => out.push(b.next().unwrap()),
                Ordering::Equal => {
                    let (mono, ca) = a.next().unwrap();
                    let (_, cb) = b.next().unwrap();
                    let s = ca + cb;
                    if !s.is_zero() {
                        out.push((mono.clone(), s));
                    }
                }
            }
        }
        Polynomial::from_sorted(ring, out)
    }

    pub(crate) fn mul_unchecked(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = Polynomial::zero(&self.ring);
        for (m, c) in &small.terms {
            acc = acc.add_scaled(large, c, Some(m));
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial::from_sorted(
            &self.ring,
            self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        )
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial::from_sorted(
            &self.ring,
            self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
        )
    }

    /// Scales so the leading coefficient is one.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coeff() {
            Some(c) if !c.is_one() => self.scale(&c.recip()),
            _ => self.clone(),
        }
    }

    /// Formal partial derivative with respect to the variable at `var`.
    pub fn partial(&self, var: usize) -> Polynomial {
        let ring = &self.ring;
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.0[var] > 0)
            .map(|(m, c)| {
                let mut e = m.0.clone();
                let k = e[var];
                e[var] -= 1;
                (Monomial(e), c * Rational::from_integer(BigInt::from(k)))
            });
        // Lowering one exponent can reorder terms under grevlex/block orders.
        Polynomial::from_terms(ring, terms)
    }

    pub fn partial_named(&self, name: &str) -> Result<Polynomial> {
        Ok(self.partial(self.ring.index_of(name)?))
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.ring.nvars(), "point arity");
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            total += t;
        }
        total
    }

    /// Moves the polynomial into `target`, matching variables by name.
    pub fn embed(&self, target: &Ring) -> Result<Polynomial> {
        if &self.ring == target {
            return Ok(self.clone());
        }
        let used = self.variables();
        let mut map = vec![usize::MAX; self.ring.nvars()];
        for v in used {
            map[v] = target.index_of(&self.ring.vars()[v])?;
        }
        Ok(self.map_vars(target, &map))
    }

    /// Sends variable `i` to variable `map[i]` of `target`. Entries for
    /// unused variables are ignored.
    pub(crate) fn map_vars(&self, target: &Ring, map: &[usize]) -> Polynomial {
        let n = target.nvars();
        Polynomial::from_terms(
            target,
            self.terms.iter().map(|(m, c)| {
                let mut e = vec![0; n];
                for (i, &k) in m.0.iter().enumerate() {
                    if k > 0 {
                        e[map[i]] += k;
                    }
                }
                (Monomial(e), c.clone())
            }),
        )
    }

    /// Same polynomial under a different order of the same variables.
    pub fn with_order(&self, order: &MonomialOrder) -> Result<Polynomial> {
        let ring = self.ring.reordered(order.clone())?;
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| ring.cmp_exps(&b.0 .0, &a.0 .0));
        Ok(Polynomial { ring, terms })
    }

    /// Coefficients `c_0, ..., c_d` with `self = sum c_k * var^k`; the
    /// coefficients live in the same ring and do not involve `var`.
    pub fn to_univariate(&self, var: usize) -> Vec<Polynomial> {
        let d = self.degree_in(var) as usize;
        let mut buckets: Vec<Vec<Term>> = vec![Vec::new(); d + 1];
        for (m, c) in &self.terms {
            let k = m.0[var] as usize;
            let mut e = m.0.clone();
            e[var] = 0;
            buckets[k].push((Monomial(e), c.clone()));
        }
        buckets
            .into_iter()
            .map(|t| Polynomial::from_terms(&self.ring, t))
            .collect()
    }

    pub fn from_univariate(ring: &Ring, var: usize, coeffs: &[Polynomial]) -> Polynomial {
        let n = ring.nvars();
        Polynomial::from_terms(
            ring,
            coeffs.iter().enumerate().flat_map(|(k, p)| {
                p.terms.iter().map(move |(m, c)| {
                    let mut e = m.0.clone();
                    debug_assert_eq!(e.len(), n);
                    e[var] += k as u32;
                    (Monomial(e), c.clone())
                })
            }),
        )
    }

    /// Divides out the gcd of the integer numerators after clearing
    /// denominators, with a positive leading coefficient.
    pub fn primitive(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        use num_integer::Integer;
        let den = self
            .terms
            .iter()
            .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let nums: Vec<BigInt> = self
            .terms
            .iter()
            .map(|(_, c)| (c * Rational::from_integer(den.clone())).to_integer())
            .collect();
        let mut g = nums.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if nums[0].is_negative() {
            g = -g;
        }
        let s = Rational::new(den, g);
        self.scale(&s)
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Polynomial) -> bool {
        self.ring == other.ring && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Hash for Polynomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::from_sorted(
            &self.ring,
            self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        )
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

fn fmt_rational(c: &Rational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if c.is_integer() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let vars = self.ring.vars();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            let mut first = true;
            if m.is_one() || !a.is_one() {
                fmt_rational(&a, f)?;
                first = false;
            }
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                f.write_str(&vars[i])?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse;

    fn ring() -> Ring {
        Ring::new(&["y1", "y2"]).unwrap()
    }

    fn p(s: &str) -> Polynomial {
        parse(s, &ring()).unwrap()
    }

    #[test]
    fn additive_inverse_is_zero() {
        assert!((p("y1") + p("-y1")).is_zero());
        assert_eq!(p("y1^2") + p("y1"), p("y1^2 + y1"));
    }

    #[test]
    fn product_examples() {
        assert_eq!(p("y1") * p("y1"), p("y1^2"));
        assert!((p("y1 + 3") * Polynomial::zero(&ring())).is_zero());
        assert_eq!(p("y1 + y2") * p("y1 - y2"), p("y1^2 - y2^2"));
    }

    #[test]
    fn partial_examples() {
        assert_eq!(p("y1^2").partial(0), p("2*y1"));
        assert_eq!(p("y1*y2 + 1").partial_named("y2").unwrap(), p("y1"));
        assert!(matches!(
            p("y1").partial_named("z"),
            Err(Error::UnknownVariable(_))
        ));
    }

    #[test]
    fn ring_mismatch_is_reported() {
        let other = Ring::new(&["y1", "y3"]).unwrap();
        let q = Polynomial::var(&other, 0);
        assert!(matches!(p("y1").try_add(&q), Err(Error::RingMismatch)));
        assert!(matches!(p("y1").try_mul(&q), Err(Error::RingMismatch)));
    }

    #[test]
    fn exponent_ceiling() {
        let r = ring().with_max_exponent(8);
        let y = Polynomial::var(&r, 0);
        assert!(y.pow(8).is_ok());
        assert!(matches!(
            y.pow(9),
            Err(Error::ExponentOverflow { limit: 8 })
        ));
        let y5 = y.pow(5).unwrap();
        assert!(y5.try_mul(&y5).is_err());
    }

    #[test]
    fn display_is_canonical() {
        assert_eq!(p("3/2*y1 - y1").to_string(), "1/2*y1");
        assert_eq!(p("-y2 + y1^2*y2 - 1").to_string(), "y1^2*y2 - y2 - 1");
        assert_eq!(p("0").to_string(), "0");
    }

    #[test]
    fn univariate_round_trip() {
        let q = p("y1^2*y2 + 3*y2 - y1 + 4");
        let coeffs = q.to_univariate(1);
        assert_eq!(coeffs.len(), 2);
        assert_eq!(coeffs[1], p("y1^2 + 3"));
        assert_eq!(Polynomial::from_univariate(&ring(), 1, &coeffs), q);
    }

    #[test]
    fn primitive_clears_content() {
        assert_eq!(p("-4/3*y1 + 2/3").primitive(), p("2*y1 - 1"));
    }

    #[test]
    fn reorder_preserves_value() {
        let q = p("y1*y2 + y2^3 + y1");
        let lex = q.with_order(&MonomialOrder::Lex).unwrap();
        assert_eq!(lex.leading_monomial().unwrap().exponents(), &[1, 1]);
        assert_eq!(q.leading_monomial().unwrap().exponents(), &[0, 3]);
        assert_eq!(lex.with_order(&MonomialOrder::Grevlex).unwrap(), q);
    }
}
