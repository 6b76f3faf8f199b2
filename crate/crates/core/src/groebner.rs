//! Multivariate division, Buchberger's algorithm and elimination.

use std::collections::{BTreeSet, HashSet};

use num_traits::One;

use crate::error::{Error, Resource, Result};
use crate::poly::{Monomial, MonomialOrder, Polynomial, Rational, Ring};

/// Ceilings that keep a Gröbner basis computation finite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Limits {
    pub max_degree: u32,
    pub max_basis: usize,
    pub max_pairs: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_degree: 64,
            max_basis: 4096,
            max_pairs: 1_000_000,
        }
    }
}

/// Reduced, monic Gröbner basis, sorted by decreasing leading monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Ring,
    basis: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        self.ring.order()
    }

    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn into_basis(self) -> Vec<Polynomial> {
        self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// True iff the ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        matches!(self.basis.as_slice(), [p] if p.is_one())
    }

    pub fn leading_monomials(&self) -> Vec<&Monomial> {
        self.basis
            .iter()
            .map(|p| p.leading_monomial().expect("nonzero basis element"))
            .collect()
    }

    /// Normal form of `p`, which may live in any ring with the same variables.
    pub fn reduce(&self, p: &Polynomial) -> Result<Polynomial> {
        let p = self.bring(p)?;
        Ok(reduce_full(&p, &self.basis))
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        Ok(self.reduce(p)?.is_zero())
    }

    fn bring(&self, p: &Polynomial) -> Result<Polynomial> {
        if p.ring() == &self.ring {
            Ok(p.clone())
        } else if p.ring().vars() == self.ring.vars() {
            p.with_order(self.ring.order())
        } else {
            Err(Error::RingMismatch)
        }
    }
}

/// Remainder of multivariate division of `p` by `divisors`: no term of the
/// result is divisible by a leading monomial of a divisor, and `p - result`
/// lies in the ideal they generate. Everything must share one ring, whose
/// order is used.
pub fn normal_form(p: &Polynomial, divisors: &[Polynomial]) -> Result<Polynomial> {
    if divisors.iter().any(|g| g.ring() != p.ring()) {
        return Err(Error::RingMismatch);
    }
    let nonzero: Vec<Polynomial> = divisors.iter().filter(|g| !g.is_zero()).cloned().collect();
    Ok(reduce_full(p, &nonzero))
}

pub(crate) fn reduce_full(p: &Polynomial, divisors: &[Polynomial]) -> Polynomial {
    let ring = p.ring().clone();
    let mut work = p.clone();
    let mut rem: Vec<(Monomial, Rational)> = Vec::new();
    while let Some((m, c)) = work.leading_term().cloned() {
        let divisor = divisors
            .iter()
            .find(|g| g.leading_monomial().is_some_and(|lm| lm.divides(&m)));
        match divisor {
            Some(g) => {
                let (lm, lc) = g.leading_term().unwrap();
                let q = -(&c / lc);
                work = work.add_scaled(g, &q, Some(&m.div(lm)));
            }
            None => {
                rem.push((m, c));
                let mut terms = work.into_terms();
                terms.remove(0);
                work = Polynomial::from_sorted(&ring, terms);
            }
        }
    }
    Polynomial::from_sorted(&ring, rem)
}

fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (fm, fc) = f.leading_term().unwrap();
    let (gm, gc) = g.leading_term().unwrap();
    let l = fm.lcm(gm);
    let a = f.mul_term(&l.div(fm), &fc.recip());
    a.add_scaled(g, &-gc.recip(), Some(&l.div(gm)))
}

#[derive(Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Pair {
    degree: u64,
    lcm: Vec<u32>,
    i: usize,
    j: usize,
}

fn check_vars(ring: &Ring, gens: &[Polynomial]) -> Result<()> {
    if gens.iter().any(|g| g.ring().vars() != ring.vars()) {
        Err(Error::RingMismatch)
    } else {
        Ok(())
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens` with respect to
/// the order of `ring`. The generators must be over the same variables;
/// they are re-sorted into `ring`'s order.
///
/// Pairs are processed smallest lcm degree first (ties broken by the lcm
/// exponent vector, then indices), and pruned by the coprime-leading-term
/// and chain criteria.
pub fn buchberger(ring: &Ring, gens: &[Polynomial], limits: &Limits) -> Result<GroebnerBasis> {
    check_vars(ring, gens)?;
    let mut basis: Vec<Polynomial> = Vec::new();
    let mut seen = HashSet::new();
    for g in gens {
        if g.is_zero() {
            continue;
        }
        let g = g.with_order(ring.order())?.monic();
        if g.is_constant() {
            return Ok(unit_basis(ring));
        }
        check_degree(&g, limits)?;
        if seen.insert(g.clone()) {
            basis.push(g);
        }
    }
    if basis.len() > limits.max_basis {
        return Err(Error::ResourceLimit {
            resource: Resource::BasisSize,
            limit: limits.max_basis,
        });
    }

    let mut queue: BTreeSet<Pair> = BTreeSet::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    let mut pair_count = 0usize;
    let lm = |basis: &[Polynomial], k: usize| basis[k].leading_monomial().unwrap().clone();

    let mut push_pairs = |basis: &[Polynomial],
                          queue: &mut BTreeSet<Pair>,
                          pending: &mut HashSet<(usize, usize)>,
                          j: usize|
     -> Result<()> {
        let mj = lm(basis, j);
        for i in 0..j {
            pair_count += 1;
            if pair_count > limits.max_pairs {
                return Err(Error::ResourceLimit {
                    resource: Resource::Pairs,
                    limit: limits.max_pairs,
                });
            }
            let l = lm(basis, i).lcm(&mj);
            queue.insert(Pair {
                degree: l.degree(),
                lcm: l.exponents().to_vec(),
                i,
                j,
            });
            pending.insert((i, j));
        }
        Ok(())
    };

    for j in 1..basis.len() {
        push_pairs(&basis, &mut queue, &mut pending, j)?;
    }

    while let Some(pair) = queue.pop_first() {
        let (i, j) = (pair.i, pair.j);
        pending.remove(&(i, j));
        let mi = lm(&basis, i);
        let mj = lm(&basis, j);
        if mi.is_coprime(&mj) {
            continue;
        }
        let l = mi.lcm(&mj);
        let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].leading_monomial().unwrap().divides(&l)
                && !pending.contains(&key(i, k))
                && !pending.contains(&key(j, k))
        });
        if chain {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j]);
        let h = reduce_full(&s, &basis);
        if h.is_zero() {
            continue;
        }
        let h = h.monic();
        if h.is_constant() {
            return Ok(unit_basis(ring));
        }
        check_degree(&h, limits)?;
        basis.push(h);
        if basis.len() > limits.max_basis {
            return Err(Error::ResourceLimit {
                resource: Resource::BasisSize,
                limit: limits.max_basis,
            });
        }
        let j = basis.len() - 1;
        push_pairs(&basis, &mut queue, &mut pending, j)?;
    }

    Ok(GroebnerBasis {
        ring: ring.clone(),
        basis: interreduce(ring, basis),
    })
}

fn unit_basis(ring: &Ring) -> GroebnerBasis {
    GroebnerBasis {
        ring: ring.clone(),
        basis: vec![Polynomial::one(ring)],
    }
}

fn check_degree(p: &Polynomial, limits: &Limits) -> Result<()> {
    if p.total_degree() > limits.max_degree as u64 {
        Err(Error::ResourceLimit {
            resource: Resource::Degree,
            limit: limits.max_degree as usize,
        })
    } else {
        Ok(())
    }
}

/// Turns a Gröbner basis into the reduced one.
fn interreduce(ring: &Ring, basis: Vec<Polynomial>) -> Vec<Polynomial> {
    let lms: Vec<&Monomial> = basis
        .iter()
        .map(|p| p.leading_monomial().unwrap())
        .collect();
    let keep: Vec<usize> = (0..basis.len())
        .filter(|&i| {
            !(0..basis.len())
                .any(|j| j != i && lms[j].divides(lms[i]) && (lms[j] != lms[i] || j < i))
        })
        .collect();
    let minimal: Vec<Polynomial> = keep.iter().map(|&i| basis[i].clone()).collect();
    let mut reduced: Vec<Polynomial> = Vec::with_capacity(minimal.len());
    for (k, g) in minimal.iter().enumerate() {
        let (m, c) = g.leading_term().unwrap().clone();
        let others: Vec<Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|(l, _)| *l != k)
            .map(|(_, p)| p.clone())
            .collect();
        let tail = Polynomial::from_sorted(ring, g.terms()[1..].to_vec());
        let tail = reduce_full(&tail, &others);
        let lead = Polynomial::from_sorted(ring, vec![(m, c)]);
        reduced.push(lead.add_scaled(&tail, &Rational::one(), None).monic());
    }
    reduced.sort_by(|a, b| {
        ring.cmp_exps(
            b.leading_monomial().unwrap().exponents(),
            a.leading_monomial().unwrap().exponents(),
        )
    });
    reduced
}

/// Generators of `(gens) ∩ Q[remaining variables]`, returned in the
/// generators' own ring. `drop` holds variable indices.
pub fn eliminate(gens: &[Polynomial], drop: &[usize], limits: &Limits) -> Result<Vec<Polynomial>> {
    let Some(first) = gens.first() else {
        return Ok(Vec::new());
    };
    let ring = first.ring().clone();
    if gens.iter().any(|g| g.ring() != &ring) {
        return Err(Error::RingMismatch);
    }
    let n = ring.nvars();
    if let Some(&bad) = drop.iter().find(|&&v| v >= n) {
        return Err(Error::IndexOutOfRange { index: bad, len: n });
    }
    let dropped: Vec<usize> = (0..n).filter(|v| drop.contains(v)).collect();
    if dropped.is_empty() {
        let gb = buchberger(&ring, gens, limits)?;
        return Ok(gb.into_basis());
    }
    let kept: Vec<usize> = (0..n).filter(|v| !drop.contains(v)).collect();
    let perm: Vec<usize> = dropped.iter().chain(&kept).copied().collect();
    let names: Vec<&str> = perm.iter().map(|&v| ring.vars()[v].as_str()).collect();
    let elim_ring = Ring::with_order(&names, MonomialOrder::Block(dropped.len()))?
        .with_max_exponent(ring.max_exponent());
    // forward[v] = position of v in the elimination ring
    let mut forward = vec![0; n];
    for (pos, &v) in perm.iter().enumerate() {
        forward[v] = pos;
    }
    let moved: Vec<Polynomial> = gens
        .iter()
        .map(|g| g.map_vars(&elim_ring, &forward))
        .collect();
    let gb = buchberger(&elim_ring, &moved, limits)?;
    let k = dropped.len();
    Ok(gb
        .into_basis()
        .into_iter()
        .filter(|p| {
            p.terms()
                .iter()
                .all(|(m, _)| m.exponents()[..k].iter().all(|&e| e == 0))
        })
        .map(|p| p.map_vars(&ring, &perm))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse;

    fn ring(vars: &[&str]) -> Ring {
        Ring::new(vars).unwrap()
    }

    fn polys(r: &Ring, s: &[&str]) -> Vec<Polynomial> {
        s.iter().map(|t| parse(t, r).unwrap()).collect()
    }

    #[test]
    fn normal_form_examples() {
        let r = ring(&["y1", "y2"]);
        let g = polys(&r, &["y1"]);
        assert!(normal_form(&parse("y1^2", &r).unwrap(), &g)
            .unwrap()
            .is_zero());
        assert_eq!(
            normal_form(&parse("y2", &r).unwrap(), &g).unwrap(),
            parse("y2", &r).unwrap()
        );
        assert!(normal_form(&parse("y1^2*(y2 + y1 - 2)", &r).unwrap(), &g)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn buchberger_examples() {
        let r = ring(&["y1", "y2"]);
        let gb = buchberger(
            &r,
            &polys(&r, &["y1^2", "y1^2*(y2 + y1 - 2)"]),
            &Limits::default(),
        )
        .unwrap();
        assert_eq!(gb.basis(), polys(&r, &["y1^2"]).as_slice());

        let gb = buchberger(&r, &[], &Limits::default()).unwrap();
        assert!(gb.is_empty());

        let r1 = ring(&["y"]);
        let gb = buchberger(&r1, &polys(&r1, &["y", "y^2 + 1"]), &Limits::default()).unwrap();
        assert!(gb.is_unit());
    }

    #[test]
    fn textbook_basis() {
        // x^2 - y, x^3 - x under grevlex with x > y
        let r = ring(&["x", "y"]);
        let gb = buchberger(&r, &polys(&r, &["x^3 - x", "x^2 - y"]), &Limits::default()).unwrap();
        assert_eq!(
            gb.basis(),
            polys(&r, &["x^2 - y", "x*y - x", "y^2 - y"]).as_slice()
        );
    }

    #[test]
    fn elimination_examples() {
        let r = ring(&["t", "y"]);
        let out = eliminate(&polys(&r, &["t*y - 1", "y"]), &[0], &Limits::default()).unwrap();
        assert_eq!(out, polys(&r, &["1"]));

        let r = ring(&["x", "y"]);
        assert!(eliminate(&polys(&r, &["x - y"]), &[0], &Limits::default())
            .unwrap()
            .is_empty());
        assert!(
            eliminate(&polys(&r, &["x^2", "x*y"]), &[0], &Limits::default())
                .unwrap()
                .is_empty()
        );
        let out = eliminate(
            &polys(&r, &["x - y^2", "x^2 - 1"]),
            &[0],
            &Limits::default(),
        )
        .unwrap();
        assert_eq!(out, polys(&r, &["y^4 - 1"]));
        assert!(matches!(
            eliminate(&polys(&r, &["x"]), &[5], &Limits::default()),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn resource_ceilings_are_enforced() {
        let r = ring(&["x", "y", "z"]);
        let gens = polys(&r, &["x^3 - y*z", "y^3 - x*z^2", "z^3 - x^2*y"]);
        let tight = Limits {
            max_degree: 3,
            ..Limits::default()
        };
        match buchberger(&r, &gens, &tight) {
            Err(Error::ResourceLimit { resource, .. }) => assert_eq!(resource, Resource::Degree),
            other => panic!("{other:?}"),
        }
        let tight = Limits {
            max_pairs: 2,
            ..Limits::default()
        };
        assert!(matches!(
            buchberger(&r, &gens, &tight),
            Err(Error::ResourceLimit {
                resource: Resource::Pairs,
                ..
            })
        ));
    }

    #[test]
    fn ring_mismatch() {
        let a = ring(&["x", "y"]);
        let b = ring(&["x", "z"]);
        let p = parse("x", &a).unwrap();
        let q = parse("z", &b).unwrap();
        assert!(matches!(
            normal_form(&p, std::slice::from_ref(&q)),
            Err(Error::RingMismatch)
        ));
        assert!(matches!(
            buchberger(&a, &[q], &Limits::default()),
            Err(Error::RingMismatch)
        ));
    }
}
