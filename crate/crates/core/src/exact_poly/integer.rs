//! Integer helpers: perfect squares, factorization with a fixed budget,
//! signed squarefree parts, and small-prime utilities.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use super::{ExactInt, ExactRat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntError {
    #[error("input must be nonzero")]
    ZeroInput,
    #[error("factorization of {n} incomplete: cofactor {cofactor} not split within budget")]
    FactorizationIncomplete { n: ExactInt, cofactor: ExactInt },
}

/// Work limits for [`factorize`].
#[derive(Debug, Clone, Copy)]
pub struct FactorBudget {
    pub trial_bound: u64,
    /// Total Pollard-rho iterations across all attempts on one cofactor.
    pub rho_iterations: u64,
}

impl Default for FactorBudget {
    fn default() -> Self {
        FactorBudget {
            trial_bound: 1_000_000,
            rho_iterations: 1 << 20,
        }
    }
}

/// Prime factorization `n = sign * prod p^e`, primes ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub negative: bool,
    pub factors: Vec<(ExactInt, u32)>,
}

impl Factorization {
    pub fn primes(&self) -> Vec<ExactInt> {
        self.factors.iter().map(|(p, _)| p.clone()).collect()
    }
}

/// Miller-Rabin with the first thirteen prime bases is a proof of
/// primality below this bound.
fn deterministic_mr_bound() -> BigInt {
    "3317044064679887385961981".parse().unwrap()
}

const MR_BASES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

pub fn is_perfect_square(n: &ExactInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let s = n.sqrt();
    &s * &s == *n
}

/// True iff `r` is the square of a rational number.
pub fn is_rational_square(r: &ExactRat) -> bool {
    is_perfect_square(r.numer()) && is_perfect_square(r.denom())
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// All primes `<= bound`, ascending.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(k, &b)| b.then_some(k as u64))
        .collect()
}

/// Strong probable-prime test to the bases in `MR_BASES`; n odd, n > 41.
fn miller_rabin(n: &BigInt) -> bool {
    let one = BigInt::one();
    let n_minus_1 = n - &one;
    let mut d = n_minus_1.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'witness: for a in MR_BASES {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent's variant of Pollard rho. Returns a nontrivial factor or `None`
/// once `budget` iterations are spent.
fn pollard_rho(n: &BigInt, budget: u64) -> Option<BigInt> {
    let one = BigInt::one();
    let mut spent = 0u64;
    for c in 1u32.. {
        if spent >= budget {
            return None;
        }
        let c = BigInt::from(c);
        let f = |v: &BigInt| (v * v + &c) % n;
        let mut y = BigInt::from(2);
        let mut r = 1u64;
        let mut q = one.clone();
        let mut x;
        let mut ys;
        let m = 128u64;
        let mut g;
        loop {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            loop {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    q = (&q * (&x - &y).abs()) % n;
                }
                spent += m.min(r - k);
                g = q.gcd(n);
                k += m;
                if k >= r || !g.is_one() {
                    break;
                }
            }
            r *= 2;
            if !g.is_one() || spent >= budget {
                break;
            }
        }
        if g == *n {
            // Backtrack one step at a time from the saved point.
            loop {
                ys = f(&ys);
                g = (&x - &ys).abs().gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if !g.is_one() && g != *n {
            return Some(g);
        }
    }
    None
}

fn push_factor(out: &mut Vec<(BigInt, u32)>, p: BigInt, e: u32) {
    match out.iter_mut().find(|(q, _)| *q == p) {
        Some(slot) => slot.1 += e,
        None => out.push((p, e)),
    }
}

/// Splits a cofactor whose prime factors all exceed the trial bound.
fn split_large(
    n: BigInt,
    budget: &FactorBudget,
    out: &mut Vec<(BigInt, u32)>,
    original: &BigInt,
) -> Result<(), IntError> {
    if n.is_one() {
        return Ok(());
    }
    let trial = BigInt::from(budget.trial_bound);
    if n <= &trial * &trial {
        push_factor(out, n, 1);
        return Ok(());
    }
    if is_perfect_square(&n) {
        let s = n.sqrt();
        let mut sub = Vec::new();
        split_large(s, budget, &mut sub, original)?;
        for (p, e) in sub {
            push_factor(out, p, 2 * e);
        }
        return Ok(());
    }
    if miller_rabin(&n) {
        if n < deterministic_mr_bound() {
            push_factor(out, n, 1);
            return Ok(());
        }
        // Probable prime beyond the proven range: not certified.
        return Err(IntError::FactorizationIncomplete {
            n: original.clone(),
            cofactor: n,
        });
    }
    match pollard_rho(&n, budget.rho_iterations) {
        Some(d) => {
            let other = &n / &d;
            split_large(d, budget, out, original)?;
            split_large(other, budget, out, original)
        }
        None => Err(IntError::FactorizationIncomplete {
            n: original.clone(),
            cofactor: n,
        }),
    }
}

pub fn factorize(n: &ExactInt) -> Result<Factorization, IntError> {
    factorize_with(n, &FactorBudget::default())
}

/// Trial division to `budget.trial_bound`, then Pollard rho on what is left.
pub fn factorize_with(n: &ExactInt, budget: &FactorBudget) -> Result<Factorization, IntError> {
    if n.is_zero() {
        return Err(IntError::ZeroInput);
    }
    let negative = n.is_negative();
    let mut rest = n.abs();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();

    let mut divide_out = |rest: &mut BigInt, p: u64| {
        let bp = BigInt::from(p);
        let mut e = 0;
        loop {
            let (q, r) = rest.div_rem(&bp);
            if !r.is_zero() {
                break;
            }
            *rest = q;
            e += 1;
        }
        if e > 0 {
            factors.push((bp, e));
        }
    };

    divide_out(&mut rest, 2);
    divide_out(&mut rest, 3);
    let mut p = 5u64;
    let mut step = 2u64;
    while p <= budget.trial_bound {
        if BigInt::from(p * p) > rest {
            break;
        }
        // Native arithmetic once the cofactor fits a machine word.
        let hit = match rest.to_u64() {
            Some(r) => r % p == 0,
            None => (&rest % p).is_zero(),
        };
        if hit {
            divide_out(&mut rest, p);
        }
        p += step;
        step = 6 - step;
    }
    if !rest.is_one() {
        if BigInt::from(p) * BigInt::from(p) > rest {
            push_factor(&mut factors, rest, 1);
        } else {
            split_large(rest, budget, &mut factors, n)?;
        }
    }
    factors.sort();
    Ok(Factorization { negative, factors })
}

/// Signed squarefree `d` with `n = d * s^2`.
pub fn int_squarefree_part(n: &ExactInt) -> Result<ExactInt, IntError> {
    let fac = factorize(n)?;
    let mut d = fac
        .factors
        .iter()
        .filter(|(_, e)| e % 2 == 1)
        .fold(BigInt::one(), |acc, (p, _)| acc * p);
    if fac.negative {
        d = -d;
    }
    Ok(d)
}

/// Squarefree class of a nonzero rational: `r = d * s^2` with `s` rational.
pub fn rat_squarefree_part(r: &ExactRat) -> Result<ExactInt, IntError> {
    int_squarefree_part(&(r.numer() * r.denom()))
}

/// All positive divisors of `|n|`, ascending.
pub fn divisors(n: &ExactInt) -> Result<Vec<ExactInt>, IntError> {
    let fac = factorize(n)?;
    let mut divs = vec![BigInt::one()];
    for (p, e) in &fac.factors {
        let mut next = Vec::with_capacity(divs.len() * (*e as usize + 1));
        for d in &divs {
            let mut pk = d.clone();
            next.push(pk.clone());
            for _ in 0..*e {
                pk *= p;
                next.push(pk.clone());
            }
        }
        divs = next;
    }
    divs.sort();
    Ok(divs)
}
