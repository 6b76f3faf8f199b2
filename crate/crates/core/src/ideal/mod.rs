//! Ideals of a polynomial ring and the operations the prolongation chain
//! needs: membership, radical membership, saturation, intersection,
//! dimension, radical, equality and the Noether exponent.

mod radical;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use itertools::Itertools;
use num_bigint::BigInt;

use crate::error::{Error, Resource, Result};
use crate::groebner::{buchberger, eliminate, GroebnerBasis, Limits};
use crate::poly::{Monomial, MonomialOrder, Polynomial, Rational, Ring};

/// Upper bound on the generator products `noether_exponent` will test.
pub const MAX_NOETHER_PRODUCTS: usize = 100_000;

/// An ideal given by generators, with lazily computed Gröbner bases cached
/// per monomial order. Cloning shares nothing mutable.
pub struct Ideal {
    ring: Ring,
    gens: Vec<Polynomial>,
    limits: Limits,
    cache: Mutex<HashMap<MonomialOrder, Arc<GroebnerBasis>>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        Ideal {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            limits: self.limits.clone(),
            cache: Mutex::new(self.cache.lock().expect("cache lock").clone()),
        }
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Ideal").field(&self.gens).finish()
    }
}

impl Ideal {
    /// The ideal generated by `gens` in `ring`. Generators over the same
    /// variables but another order are re-sorted; zeros are dropped.
    pub fn new(ring: &Ring, gens: Vec<Polynomial>) -> Result<Ideal> {
        let mut out = Vec::with_capacity(gens.len());
        for g in gens {
            if g.ring().vars() != ring.vars() {
                return Err(Error::RingMismatch);
            }
            if !g.is_zero() {
                out.push(g.with_order(ring.order())?);
            }
        }
        Ok(Ideal {
            ring: ring.clone(),
            gens: out,
            limits: Limits::default(),
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn zero(ring: &Ring) -> Ideal {
        Ideal::new(ring, Vec::new()).expect("empty generator list")
    }

    pub fn unit(ring: &Ring) -> Ideal {
        Ideal::new(ring, vec![Polynomial::one(ring)]).expect("same ring")
    }

    pub fn with_limits(mut self, limits: Limits) -> Ideal {
        self.limits = limits;
        self
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    /// A new ideal over the same ring sharing this ideal's limits.
    fn derive(&self, gens: Vec<Polynomial>) -> Result<Ideal> {
        Ok(Ideal::new(&self.ring, gens)?.with_limits(self.limits.clone()))
    }

    /// `self + (extra)`.
    pub fn extend(&self, extra: &[Polynomial]) -> Result<Ideal> {
        let mut gens = self.gens.clone();
        gens.extend_from_slice(extra);
        self.derive(gens)
    }

    /// Reduced Gröbner basis under `order`, computed once and cached.
    pub fn groebner_in(&self, order: &MonomialOrder) -> Result<Arc<GroebnerBasis>> {
        if let Some(gb) = self.cache.lock().expect("cache lock").get(order) {
            return Ok(gb.clone());
        }
        let ring = self.ring.reordered(order.clone())?;
        let gb = Arc::new(buchberger(&ring, &self.gens, &self.limits)?);
        self.cache
            .lock()
            .expect("cache lock")
            .insert(order.clone(), gb.clone());
        Ok(gb)
    }

    /// Reduced grevlex Gröbner basis.
    pub fn groebner(&self) -> Result<Arc<GroebnerBasis>> {
        self.groebner_in(&MonomialOrder::Grevlex)
    }

    /// The same ideal, generated by its reduced grevlex basis (in this
    /// ideal's ring).
    pub fn canonical(&self) -> Result<Ideal> {
        let gb = self.groebner()?;
        let gens = gb
            .basis()
            .iter()
            .map(|p| p.with_order(self.ring.order()))
            .collect::<Result<Vec<_>>>()?;
        let out = self.derive(gens)?;
        out.cache
            .lock()
            .expect("cache lock")
            .insert(MonomialOrder::Grevlex, gb);
        Ok(out)
    }

    /// `1 ∈ I`, equivalently `V(I)` is empty over the complex numbers.
    pub fn is_trivial(&self) -> Result<bool> {
        Ok(self.groebner()?.is_unit())
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        if f.ring().vars() != self.ring.vars() {
            return Err(Error::RingMismatch);
        }
        self.groebner()?.contains(f)
    }

    /// Every generator of `other` lies in `self`.
    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Mutual containment of generators.
    pub fn ideal_equal(&self, other: &Ideal) -> Result<bool> {
        if self.ring.vars() != other.ring.vars() {
            return Err(Error::RingMismatch);
        }
        Ok(self.contains_ideal(other)? && other.contains_ideal(self)?)
    }

    /// The ring with one extra variable appended, and that variable's index.
    fn extended_ring(&self) -> Result<(Ring, usize)> {
        let t = self.ring.fresh_name("t", &[]);
        let mut vars = self.ring.vars().to_vec();
        vars.push(t);
        let ring = Ring::new(&vars)?.with_max_exponent(self.ring.max_exponent());
        Ok((ring, vars.len() - 1))
    }

    /// `f ∈ √I`, decided by triviality of `I + (1 - t f)` with `t` fresh.
    pub fn radical_membership(&self, f: &Polynomial) -> Result<bool> {
        if f.ring().vars() != self.ring.vars() {
            return Err(Error::RingMismatch);
        }
        if f.is_zero() {
            return Ok(true);
        }
        let (ext, t) = self.extended_ring()?;
        let mut gens = self.embed_all(&ext)?;
        let tf = Polynomial::var(&ext, t).mul_unchecked(&f.embed(&ext)?);
        gens.push(Polynomial::one(&ext).add_scaled(&tf, &-Rational::from_integer(1.into()), None));
        let gb = buchberger(&ext, &gens, &self.limits)?;
        Ok(gb.is_unit())
    }

    fn embed_all(&self, ring: &Ring) -> Result<Vec<Polynomial>> {
        self.gens.iter().map(|g| g.embed(ring)).collect()
    }

    /// `I : f^∞`, via elimination of `t` from `I + (t f - 1)`.
    pub fn saturation(&self, f: &Polynomial) -> Result<Ideal> {
        if f.ring().vars() != self.ring.vars() {
            return Err(Error::RingMismatch);
        }
        if f.is_zero() {
            return self.derive(vec![Polynomial::one(&self.ring)]);
        }
        if f.is_constant() {
            return Ok(self.clone());
        }
        let (ext, t) = self.extended_ring()?;
        let mut gens = self.embed_all(&ext)?;
        let tf = Polynomial::var(&ext, t).mul_unchecked(&f.embed(&ext)?);
        gens.push(tf.add_scaled(
            &Polynomial::one(&ext),
            &-Rational::from_integer(1.into()),
            None,
        ));
        let out = eliminate(&gens, &[t], &self.limits)?;
        let out = out
            .iter()
            .map(|p| p.embed(&self.ring))
            .collect::<Result<Vec<_>>>()?;
        self.derive(out)
    }

    /// `I ∩ J`, via elimination of `t` from `t I + (1 - t) J`.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        if self.ring.vars() != other.ring.vars() {
            return Err(Error::RingMismatch);
        }
        if self.is_zero_ideal() || other.is_zero_ideal() {
            return Ok(Ideal::zero(&self.ring).with_limits(self.limits.clone()));
        }
        if other.is_trivial()? {
            return Ok(self.clone());
        }
        if self.is_trivial()? {
            return self.derive(other.gens.clone());
        }
        let (ext, t) = self.extended_ring()?;
        let tv = Polynomial::var(&ext, t);
        let one_minus_t =
            Polynomial::one(&ext).add_scaled(&tv, &-Rational::from_integer(1.into()), None);
        let mut gens = Vec::new();
        for g in self.embed_all(&ext)? {
            gens.push(tv.mul_unchecked(&g));
        }
        for g in other.embed_all(&ext)? {
            gens.push(one_minus_t.mul_unchecked(&g));
        }
        let out = eliminate(&gens, &[t], &self.limits)?;
        let out = out
            .iter()
            .map(|p| p.embed(&self.ring))
            .collect::<Result<Vec<_>>>()?;
        self.derive(out)
    }

    /// Krull dimension of `V(I)`; `-1` for the unit ideal.
    pub fn dimension(&self) -> Result<i64> {
        Ok(match self.max_independent_set()? {
            Some(set) => set.len() as i64,
            None => -1,
        })
    }

    /// A largest set of variables (indices) independent modulo the leading
    /// term ideal of the grevlex basis, lexicographically earliest among the
    /// largest. `None` for the unit ideal.
    pub fn max_independent_set(&self) -> Result<Option<Vec<usize>>> {
        let gb = self.groebner()?;
        if gb.is_unit() {
            return Ok(None);
        }
        Ok(Some(independent_set(
            self.ring.nvars(),
            &gb.leading_monomials(),
        )))
    }

    /// Generators of `√I`, as a reduced grevlex basis.
    pub fn radical(&self) -> Result<Ideal> {
        radical::radical(self)
    }

    /// Smallest `e <= max_e` with `(√I)^e ⊆ I`, or `None` if there is none.
    pub fn noether_exponent(&self, max_e: u32) -> Result<Option<u32>> {
        let root = self.radical()?;
        let gens = root.generators();
        let gb = self.groebner()?;
        for e in 1..=max_e {
            let count = multiset_count(gens.len(), e as usize);
            if count > MAX_NOETHER_PRODUCTS {
                return Err(Error::ResourceLimit {
                    resource: Resource::Products,
                    limit: MAX_NOETHER_PRODUCTS,
                });
            }
            let mut ok = true;
            for combo in (0..gens.len()).combinations_with_replacement(e as usize) {
                let mut prod = Polynomial::one(&self.ring);
                for &k in &combo {
                    prod = prod.try_mul(&gens[k])?;
                }
                if !gb.contains(&prod)? {
                    ok = false;
                    break;
                }
            }
            if ok {
                return Ok(Some(e));
            }
        }
        Ok(None)
    }
}

/// Number of multisets of size `k` from `n` items, saturating.
fn multiset_count(n: usize, k: usize) -> usize {
    if n == 0 {
        return 0;
    }
    // C(n + k - 1, k)
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * BigInt::from(n + i) / BigInt::from(i + 1);
    }
    usize::try_from(acc).unwrap_or(usize::MAX)
}

pub(crate) fn independent_set(nvars: usize, lms: &[&Monomial]) -> Vec<usize> {
    let supports: Vec<Vec<usize>> = lms.iter().map(|m| m.support().collect()).collect();
    for size in (0..=nvars).rev() {
        for subset in (0..nvars).combinations(size) {
            let mut inside = vec![false; nvars];
            for &v in &subset {
                inside[v] = true;
            }
            if supports.iter().all(|s| s.iter().any(|&v| !inside[v])) {
                return subset;
            }
        }
    }
    Vec::new()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse;

    fn ideal(vars: &[&str], gens: &[&str]) -> Ideal {
        let r = Ring::new(vars).unwrap();
        let g = gens.iter().map(|s| parse(s, &r).unwrap()).collect();
        Ideal::new(&r, g).unwrap()
    }

    fn poly(i: &Ideal, s: &str) -> Polynomial {
        parse(s, i.ring()).unwrap()
    }

    #[test]
    fn triviality() {
        assert!(ideal(&["y"], &["y", "y^2 + 1"]).is_trivial().unwrap());
        assert!(!ideal(&["y1", "y2"], &[]).is_trivial().unwrap());
        assert!(!ideal(&["y1", "y2"], &["y1"]).is_trivial().unwrap());
    }

    #[test]
    fn radical_membership_examples() {
        let i = ideal(&["y1", "y2"], &["y1^2"]);
        assert!(i.radical_membership(&poly(&i, "y1")).unwrap());
        assert!(!i.radical_membership(&poly(&i, "y2")).unwrap());
        let j = ideal(&["y1", "y2"], &["y1^2", "y1^2*(y2 + y1 - 2)"]);
        assert!(j.radical_membership(&poly(&j, "y1")).unwrap());
    }

    #[test]
    fn saturation_examples() {
        let i = ideal(&["x", "y", "z"], &["x*y"]);
        let x = poly(&i, "x");
        assert!(i
            .saturation(&x)
            .unwrap()
            .ideal_equal(&ideal(&["x", "y", "z"], &["y"]))
            .unwrap());
        let i = ideal(&["x", "y", "z"], &["x^2"]);
        assert!(i.saturation(&x).unwrap().is_trivial().unwrap());
        let i = ideal(&["x", "y", "z"], &["x*y", "x*z"]);
        let s = i.saturation(&x).unwrap();
        assert!(s
            .ideal_equal(&ideal(&["x", "y", "z"], &["y", "z"]))
            .unwrap());
        assert!(s.saturation(&x).unwrap().ideal_equal(&s).unwrap());
    }

    #[test]
    fn intersection_examples() {
        let v = ["x", "y"];
        let meet = ideal(&v, &["x"]).intersect(&ideal(&v, &["y"])).unwrap();
        assert!(meet.ideal_equal(&ideal(&v, &["x*y"])).unwrap());
        let i = ideal(&v, &["x^2 - y", "x*y"]);
        assert!(i
            .intersect(&Ideal::unit(i.ring()))
            .unwrap()
            .ideal_equal(&i)
            .unwrap());
        let meet = ideal(&v, &["x", "y"])
            .intersect(&ideal(&v, &["x", "y - 1"]))
            .unwrap();
        assert!(meet.ideal_equal(&ideal(&v, &["x", "y^2 - y"])).unwrap());
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(ideal(&["y1", "y2"], &[]).dimension().unwrap(), 2);
        assert_eq!(ideal(&["y1", "y2"], &["y1"]).dimension().unwrap(), 1);
        assert_eq!(
            ideal(&["y1", "y2"], &["y1", "y1 - 1"]).dimension().unwrap(),
            -1
        );
        assert_eq!(
            ideal(&["x", "y", "z"], &["x*y", "x*z"])
                .dimension()
                .unwrap(),
            2
        );
        assert_eq!(
            ideal(&["x", "y", "z"], &["x - y^2", "z - y^3"])
                .dimension()
                .unwrap(),
            1
        );
    }

    #[test]
    fn independent_set_prefers_earliest() {
        let i = ideal(&["x", "y", "z"], &["x*y"]);
        assert_eq!(i.max_independent_set().unwrap(), Some(vec![0, 2]));
    }

    #[test]
    fn ideal_equality() {
        let v = ["y1", "y2"];
        assert!(ideal(&v, &["y1"])
            .ideal_equal(&ideal(&v, &["y1", "y1^2"]))
            .unwrap());
        assert!(!ideal(&v, &["y1"])
            .ideal_equal(&ideal(&v, &["y1^2"]))
            .unwrap());
    }

    #[test]
    fn radical_examples() {
        let v = ["y1", "y2"];
        let r = ideal(&v, &["y1^2", "y1^2*(y2 + y1 - 2)"])
            .radical()
            .unwrap();
        assert_eq!(r.generators(), &[parse("y1", r.ring()).unwrap()]);
        assert!(ideal(&v, &[]).radical().unwrap().is_zero_ideal());
        let r = ideal(&v, &["y1", "y1^2"]).radical().unwrap();
        assert_eq!(r.generators(), &[parse("y1", r.ring()).unwrap()]);
    }

    #[test]
    fn radical_of_mixed_components() {
        let v = ["x", "y"];
        // (x y^2): the two axes, one of them doubled
        let r = ideal(&v, &["x*y^2"]).radical().unwrap();
        assert!(r.ideal_equal(&ideal(&v, &["x*y"])).unwrap());
        // embedded point at the origin on the line y = 0
        let r = ideal(&v, &["y^2", "x*y"]).radical().unwrap();
        assert!(r.ideal_equal(&ideal(&v, &["y"])).unwrap());
        // zero-dimensional: a double root and a simple root
        let r = ideal(&v, &["(x - 1)^2*(x + 2)", "y^3"]).radical().unwrap();
        assert!(r
            .ideal_equal(&ideal(&v, &["(x - 1)*(x + 2)", "y"]))
            .unwrap());
        // the cusp is already radical
        let r = ideal(&v, &["y^2 - x^3"]).radical().unwrap();
        assert!(r.ideal_equal(&ideal(&v, &["y^2 - x^3"])).unwrap());
        assert!(ideal(&v, &["x", "x - 1"])
            .radical()
            .unwrap()
            .is_trivial()
            .unwrap());
    }

    #[test]
    fn noether_exponent_examples() {
        assert_eq!(
            ideal(&["y1"], &["y1^2"]).noether_exponent(5).unwrap(),
            Some(2)
        );
        assert_eq!(
            ideal(&["x", "y"], &["x^2", "y^2"])
                .noether_exponent(5)
                .unwrap(),
            Some(3)
        );
        // modulo the ideal x = y^3, so x^a y^b is y^(3a + b) and y^3 is the last miss
        assert_eq!(
            ideal(&["x", "y"], &["x*y", "x - y^3"])
                .noether_exponent(5)
                .unwrap(),
            Some(4)
        );
        assert_eq!(
            ideal(&["x", "y"], &["x", "y - 1"])
                .noether_exponent(5)
                .unwrap(),
            Some(1)
        );
        assert_eq!(ideal(&["x"], &["x^4"]).noether_exponent(3).unwrap(), None);
    }
}
