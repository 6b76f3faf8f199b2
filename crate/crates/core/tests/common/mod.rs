#![allow(dead_code)]

use pfaff::pfaffian::PfaffianSystem;
use pfaff::sysfile::parse_system;
use pfaff::{Ideal, Limits, Polynomial, Ring};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const LINE_SOLUTIONS: &str = "\
vars x: x1 x2
vars y: y1 y2
d y1 / d x1 = y1
d y1 / d x2 = y1^2
d y2 / d x1 = y1*y2 + 1
d y2 / d x2 = y1^2
";

pub const NO_SOLUTION: &str = "\
vars x: x1 x2
vars y: y
d y / d x1 = y^2
d y / d x2 = y^2 + 1
";

pub fn system(text: &str) -> PfaffianSystem {
    parse_system(text).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn limits() -> Limits {
    Limits::default()
}

pub fn names(prefix: &str, count: usize) -> Vec<String> {
    (1..=count).map(|k| format!("{prefix}{k}")).collect()
}

/// A random polynomial as text: up to `max_terms` terms with small integer
/// coefficients and total degree at most `max_deg`.
pub fn random_poly(
    rng: &mut ChaCha8Rng,
    vars: &[String],
    max_deg: u32,
    max_terms: usize,
) -> String {
    let count = rng.gen_range(1..=max_terms);
    let mut terms = Vec::new();
    for _ in 0..count {
        let mut c: i64 = rng.gen_range(-3..=3);
        if c == 0 {
            c = 1;
        }
        let deg = rng.gen_range(0..=max_deg);
        let mut factors = vec![format!("({c})")];
        for _ in 0..deg {
            factors.push(vars.choose(rng).unwrap().clone());
        }
        terms.push(factors.join("*"));
    }
    terms.join(" + ")
}

pub fn poly(text: &str, ring: &Ring) -> Polynomial {
    pfaff::parse(text, ring).unwrap()
}

pub fn ideal(ring: &Ring, gens: &[&str]) -> Ideal {
    Ideal::new(ring, gens.iter().map(|g| poly(g, ring)).collect()).unwrap()
}

/// Text of a random autonomous system with `n` unknowns and `m` directions.
pub fn random_autonomous(rng: &mut ChaCha8Rng, n: usize, m: usize, constraints: usize) -> String {
    random_autonomous_over(rng, &names("y", n), &names("x", m), constraints)
}

pub fn random_autonomous_over(
    rng: &mut ChaCha8Rng,
    ys: &[String],
    xs: &[String],
    constraints: usize,
) -> String {
    let mut text = format!("vars x: {}\nvars y: {}\n", xs.join(" "), ys.join(" "));
    for y in ys {
        for x in xs {
            let rhs = if rng.gen_bool(0.25) {
                "0".to_string()
            } else {
                random_poly(rng, ys, 2, 2)
            };
            text.push_str(&format!("d {y} / d {x} = {rhs}\n"));
        }
    }
    for _ in 0..constraints {
        text.push_str(&format!("constraint {}\n", random_poly(rng, ys, 2, 2)));
    }
    text
}

/// Text of a random system whose right-hand sides involve the `x` variables.
pub fn random_non_autonomous(rng: &mut ChaCha8Rng, n: usize, m: usize) -> String {
    let xs = names("x", m);
    let ys = names("y", n);
    let all: Vec<String> = xs.iter().chain(&ys).cloned().collect();
    let mut text = format!("vars x: {}\nvars y: {}\n", xs.join(" "), ys.join(" "));
    let mut first = true;
    for y in &ys {
        for x in &xs {
            let rhs = if first {
                format!(
                    "{} + {}",
                    xs.choose(rng).unwrap(),
                    random_poly(rng, &all, 1, 1)
                )
            } else {
                random_poly(rng, &all, 2, 2)
            };
            first = false;
            text.push_str(&format!("d {y} / d {x} = {rhs}\n"));
        }
    }
    text
}

/// `f ∈ √I` decided by adding `1 - t*f` over a ring with one extra variable.
pub fn rabinowitsch_oracle(i: &Ideal, f: &Polynomial) -> bool {
    let mut vars: Vec<String> = i.ring().vars().to_vec();
    vars.push("oracle_t".into());
    let big = Ring::new(&vars).unwrap();
    let mut gens: Vec<Polynomial> = i
        .generators()
        .iter()
        .map(|g| g.embed(&big).unwrap())
        .collect();
    let t = Polynomial::variable(&big, "oracle_t").unwrap();
    gens.push(&Polynomial::one(&big) - &(&t * &f.embed(&big).unwrap()));
    pfaff::buchberger(&big, &gens, &limits()).unwrap().is_unit()
}
