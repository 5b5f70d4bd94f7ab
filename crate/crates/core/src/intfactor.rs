//! Deterministic integer factorization at desk scale: trial division up to
//! 10^6, then Brent's variant of Pollard rho with a fixed seed schedule.
//! Cofactors beyond 64 bits are an error rather than a wrong answer.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

const TRIAL_BOUND: u64 = 1_000_000;

/// Deterministic Miller-Rabin, valid for all `n < 2^64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_u64(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Brent-cycle Pollard rho with deterministic parameter schedule.
fn pollard_rho(n: u64) -> u64 {
    assert!(n > 1 && !is_prime_u64(n) && n % 2 != 0);
    for c in 1u64.. {
        let f = |x: u64| (mul_mod_u64(x, x, n) + c) % n;
        let mut x = 2u64;
        let mut y = 2u64;
        let mut d = 1u64;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd_u64(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
    }
    unreachable!()
}

fn factor_u64_into(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime_u64(n) {
        out.push(n);
        return;
    }
    let d = pollard_rho(n);
    factor_u64_into(d, out);
    factor_u64_into(n / d, out);
}

/// Prime factorization of `|n|` as sorted `(prime, multiplicity)` pairs.
pub fn factor(n: &BigInt) -> Result<Vec<(u64, u32)>> {
    if n.is_zero() {
        return Err(Error::ZeroElement);
    }
    let mut rest = n.abs();
    let mut primes: Vec<u64> = Vec::new();
    let mut p = 2u64;
    while p <= TRIAL_BOUND {
        let pb = BigInt::from(p);
        if &pb * &pb > rest {
            break;
        }
        while (&rest % &pb).is_zero() {
            primes.push(p);
            rest /= &pb;
        }
        p = if p == 2 { 3 } else { p + 2 };
    }
    if !rest.is_one() {
        let r = rest.to_u64().ok_or_else(|| {
            Error::BoundExceeded(format!("cofactor {rest} exceeds the 64-bit factoring range"))
        })?;
        factor_u64_into(r, &mut primes);
    }
    primes.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for q in primes {
        match out.last_mut() {
            Some((lp, e)) if *lp == q => *e += 1,
            _ => out.push((q, 1)),
        }
    }
    Ok(out)
}

/// `p`-adic valuation of a nonzero integer.
pub fn valuation_int(n: &BigInt, p: u64) -> u32 {
    assert!(!n.is_zero());
    let mut v = 0u32;
    let mut rest = n.abs();
    let pb = BigInt::from(p);
    while (&rest % &pb).is_zero() {
        rest /= &pb;
        v += 1;
    }
    v
}

/// Squarefree part decomposition: `|n| = s^2 * m` with `m` squarefree;
/// returns `(m, s)` with the sign of `n` carried on `m`.
pub fn squarefree_part(n: &BigInt) -> Result<(BigInt, BigInt)> {
    let fac = factor(n)?;
    let mut m = BigInt::one();
    let mut s = BigInt::one();
    for (p, e) in fac {
        let pb = BigInt::from(p);
        if e % 2 == 1 {
            m *= &pb;
        }
        s *= pb.pow(e / 2);
    }
    if n.is_negative() {
        m = -m;
    }
    Ok((m, s))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_factorizations() {
        assert_eq!(factor(&BigInt::from(6)).unwrap(), vec![(2, 1), (3, 1)]);
        assert_eq!(factor(&BigInt::from(-12)).unwrap(), vec![(2, 2), (3, 1)]);
        assert_eq!(factor(&BigInt::from(1)).unwrap(), vec![]);
        assert_eq!(factor(&BigInt::from(97)).unwrap(), vec![(97, 1)]);
    }

    #[test]
    fn rho_handles_semiprimes() {
        let n = BigInt::from(1_000_003u64) * BigInt::from(1_000_033u64);
        assert_eq!(factor(&n).unwrap(), vec![(1_000_003, 1), (1_000_033, 1)]);
    }

    #[test]
    fn primality_edge_cases() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(3));
        assert!(!is_prime_u64(1));
        assert!(is_prime_u64(u64::MAX - 58)); // 2^64 - 59 is prime
        assert!(!is_prime_u64(3215031751)); // strong pseudoprime to bases 2,3,5,7
    }

    #[test]
    fn squarefree_parts() {
        assert_eq!(squarefree_part(&BigInt::from(20)).unwrap(), (BigInt::from(5), BigInt::from(2)));
        assert_eq!(
            squarefree_part(&BigInt::from(-8)).unwrap(),
            (BigInt::from(-2), BigInt::from(2))
        );
    }
}
