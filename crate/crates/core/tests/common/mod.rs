//! Generators and direct-definition oracles shared by the integration targets.
#![allow(dead_code)]

use num::{BigInt, BigRational, One};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use radfact::polychain::RatPoly;
use radfact::quadring::{QuadElement, QuadIdeal, QuadRing};

pub const DEFAULT_SEED: u64 = 0x5eed_0007;

pub const DS: [i64; 7] = [-1, -2, -5, -7, 2, 3, 5];

pub const SMALL_PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

pub fn seed() -> u64 {
    std::env::var("RADFACT_SEED")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

/// Independent stream per suite, derived from the global seed.
pub fn rng(stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed());
    r.set_stream(stream);
    r
}

/// Random proper ideal of norm at most `max_norm`, mixing principal,
/// two-generator and prime-product constructions.
pub fn random_ideal(rng: &mut ChaCha8Rng, q: &QuadRing, max_norm: u128) -> QuadIdeal {
    loop {
        let candidate = match rng.gen_range(0..3) {
            0 => {
                let b = 40i128;
                q.principal(rng.gen_range(-b..=b), rng.gen_range(-b..=b))
            }
            1 => {
                let b = 60i128;
                let g = [
                    QuadElement::new(rng.gen_range(-b..=b), rng.gen_range(-b..=b)),
                    QuadElement::new(rng.gen_range(-b..=b), rng.gen_range(-b..=b)),
                ];
                q.ideal_from_gens(&g)
            }
            _ => prime_product(rng, q, max_norm),
        };
        if let Ok(i) = candidate {
            if !i.is_unit() && i.norm() <= max_norm {
                return i;
            }
        }
    }
}

/// Product of random primes above small rational primes, with repetition.
pub fn prime_product(rng: &mut ChaCha8Rng, q: &QuadRing, max_norm: u128) -> radfact::Result<QuadIdeal> {
    let mut acc = q.unit_ideal();
    let steps = rng.gen_range(1..=8);
    for _ in 0..steps {
        let p = *SMALL_PRIMES[..rng.gen_range(1..=SMALL_PRIMES.len())].choose(rng).unwrap();
        let above = q.primes_above(p)?;
        let (prime, _) = above.choose(rng).unwrap();
        for _ in 0..rng.gen_range(1..=3) {
            if acc.norm() * prime.norm() > max_norm {
                return Ok(acc);
            }
            acc = q.ideal_product(&acc, prime)?;
        }
    }
    Ok(acc)
}

/// Rational primes dividing `n`, by trial division.
pub fn prime_divisors(mut n: u128) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u128;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p as u64);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n as u64);
    }
    out
}

/// All primes of `q` above rational primes dividing `n`.
pub fn primes_over(q: &QuadRing, n: u128) -> Vec<QuadIdeal> {
    prime_divisors(n)
        .into_iter()
        .flat_map(|p| q.primes_above(p).unwrap().into_iter().map(|x| x.0))
        .collect()
}

/// `V_k(I) = { P : I ⊆ P^k }` straight from the definition.
pub fn vk_direct(q: &QuadRing, i: &QuadIdeal, k: u32) -> Vec<QuadIdeal> {
    let mut out: Vec<QuadIdeal> = primes_over(q, i.norm())
        .into_iter()
        .filter(|p| {
            // P^k has norm N(P)^k; containment forces it to divide N(I)
            let pk_norm = p.norm().checked_pow(k);
            if pk_norm.is_none_or(|n| !i.norm().is_multiple_of(n)) {
                return false;
            }
            let mut pk = q.unit_ideal();
            for _ in 0..k {
                pk = q.ideal_product(&pk, p).unwrap();
            }
            q.ideal_contains(&pk, i)
        })
        .collect();
    out.sort();
    out
}

/// `V(J)`: primes containing `J`.
pub fn v_direct(q: &QuadRing, j: &QuadIdeal) -> Vec<QuadIdeal> {
    let mut out: Vec<QuadIdeal> = primes_over(q, j.norm())
        .into_iter()
        .filter(|p| q.ideal_contains(p, j))
        .collect();
    out.sort();
    out
}

/// `J` is radical iff no prime containing it has its square containing it.
pub fn radical_direct(q: &QuadRing, j: &QuadIdeal) -> bool {
    v_direct(q, j).iter().all(|p| {
        let p2 = q.ideal_product(p, p).unwrap();
        !q.ideal_contains(&p2, j)
    })
}

fn small_rat(rng: &mut ChaCha8Rng) -> BigRational {
    let n: i64 = rng.gen_range(-9..=9);
    let d: i64 = rng.gen_range(1..=4);
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn is_rational_square(r: &BigRational) -> bool {
    use num::Signed;
    if r.is_negative() {
        return false;
    }
    let is_sq = |n: &BigInt| {
        let s = n.sqrt();
        &(&s * &s) == n
    };
    is_sq(r.numer()) && is_sq(r.denom())
}

/// Random monic irreducible of degree 1, 2 or 3 over ℚ.
pub fn random_irreducible(rng: &mut ChaCha8Rng) -> RatPoly {
    match rng.gen_range(1..=3) {
        1 => RatPoly::linear_root(small_rat(rng)),
        2 => loop {
            let b = small_rat(rng);
            let c = small_rat(rng);
            let disc = &b * &b - BigRational::from_integer(4.into()) * &c;
            if !is_rational_square(&disc) {
                return RatPoly::new(vec![c, b, BigRational::one()]);
            }
        },
        _ => loop {
            // monic integer cubic: rational roots are integer divisors of c0
            let a: i64 = rng.gen_range(-6..=6);
            let b: i64 = rng.gen_range(-6..=6);
            let c: i64 = rng.gen_range(1..=12) * if rng.gen_bool(0.5) { 1 } else { -1 };
            let has_root = (1..=c.abs())
                .filter(|r| c % r == 0)
                .flat_map(|r| [r, -r])
                .any(|r| r * r * r + a * r * r + b * r + c == 0);
            if !has_root {
                return RatPoly::from_i64(&[c, b, a, 1]);
            }
        },
    }
}
