//! Rational-integer number theory needed to split primes in `Z[i]`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

const TRIAL_LIMIT: u64 = 1_000_000;
const MR_BASES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Miller–Rabin with the first 13 prime bases; deterministic below `3.3·10^24`.
pub fn is_prime(n: &BigInt) -> bool {
    if *n < BigInt::from(2) {
        return false;
    }
    for b in MR_BASES {
        let b = BigInt::from(b);
        if *n == b {
            return true;
        }
        if (n % &b).is_zero() {
            return false;
        }
    }
    let one = BigInt::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'bases: for b in MR_BASES {
        let mut x = BigInt::from(b).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Prime factorization of `|n|`, ascending primes with multiplicities.
/// `n = 0` and `n = ±1` give the empty list.
pub fn factor_integer(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.abs();
    let mut primes = Vec::new();
    if n.is_zero() {
        return Vec::new();
    }
    let mut p = 2u64;
    while p < TRIAL_LIMIT {
        let bp = BigInt::from(p);
        if &bp * &bp > n {
            break;
        }
        while (&n % &bp).is_zero() {
            n /= &bp;
            primes.push(bp.clone());
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > BigInt::one() {
        split_large(n, &mut primes);
    }
    primes.sort();
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    for q in primes {
        match out.last_mut() {
            Some((last, e)) if *last == q => *e += 1,
            _ => out.push((q, 1)),
        }
    }
    out
}

fn split_large(n: BigInt, out: &mut Vec<BigInt>) {
    if n.is_one() {
        return;
    }
    if is_prime(&n) {
        out.push(n);
        return;
    }
    let mut c = 1u32;
    let d = loop {
        if let Some(d) = pollard_brent(&n, &BigInt::from(c)) {
            break d;
        }
        c += 1;
    };
    let other = &n / &d;
    split_large(d, out);
    split_large(other, out);
}

/// Brent's variant of Pollard's rho with `f(x) = x² + c`. Returns a
/// nontrivial factor or `None` if this `c` cycles without finding one.
fn pollard_brent(n: &BigInt, c: &BigInt) -> Option<BigInt> {
    if n.is_even() {
        return Some(BigInt::from(2));
    }
    let f = |x: &BigInt| (x * x + c) % n;
    let m = 128u64;
    let mut y = BigInt::from(2);
    let mut r = 1u64;
    let mut q = BigInt::one();
    let mut g = BigInt::one();
    let mut x = y.clone();
    let mut ys = y.clone();
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            for _ in 0..m.min(r - k) {
                y = f(&y);
                q = (q * (&x - &y).abs()) % n;
            }
            g = q.gcd(n);
            k += m;
        }
        r *= 2;
    }
    if g == *n {
        loop {
            ys = f(&ys);
            g = (&x - &ys).abs().gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    if g == *n {
        None
    } else {
        Some(g)
    }
}

/// Tonelli–Shanks: a square root of `a` modulo the odd prime `p`, if one exists.
pub fn sqrt_mod(a: &BigInt, p: &BigInt) -> Option<BigInt> {
    let a = a.mod_floor(p);
    if a.is_zero() {
        return Some(BigInt::zero());
    }
    let one = BigInt::one();
    let pm1 = p - &one;
    if a.modpow(&(&pm1 >> 1), p) != one {
        return None;
    }
    let s = pm1.trailing_zeros().unwrap_or(0);
    let q = &pm1 >> s;
    let mut z = BigInt::from(2);
    while z.modpow(&(&pm1 >> 1), p) != pm1 {
        z += 1;
    }
    let mut m = s;
    let mut c = z.modpow(&q, p);
    let mut t = a.modpow(&q, p);
    let mut r = a.modpow(&((&q + &one) >> 1), p);
    while !t.is_one() {
        let mut i = 0;
        let mut t2 = t.clone();
        while !t2.is_one() {
            t2 = (&t2 * &t2) % p;
            i += 1;
        }
        let b = c.modpow(&(BigInt::one() << (m - i - 1)), p);
        m = i;
        c = (&b * &b) % p;
        t = (t * &c) % p;
        r = (r * b) % p;
    }
    Some(r)
}

/// Rational primes `p ≤ bound`, ascending (sieve of Eratosthenes).
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// `p mod 4` for a positive integer.
pub(crate) fn mod4(p: &BigInt) -> u8 {
    p.mod_floor(&BigInt::from(4)).to_u8().expect("residue below 4")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_is_prime(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
    }

    #[test]
    fn primality_matches_trial_division() {
        for n in 0..3000u64 {
            assert_eq!(is_prime(&BigInt::from(n)), naive_is_prime(n), "{n}");
        }
        // Carmichael numbers
        for n in [561u64, 1105, 1729, 2465, 2821, 6601, 8911] {
            assert!(!is_prime(&BigInt::from(n)));
        }
        assert!(is_prime(&BigInt::from(1_000_000_007u64)));
    }

    #[test]
    fn sieve() {
        let ps = primes_up_to(100);
        assert_eq!(ps.len(), 25);
        assert!(ps.iter().all(|&p| naive_is_prime(p)));
        assert!(primes_up_to(1).is_empty());
    }

    #[test]
    fn factorization_multiplies_back() {
        for n in 1..2000u64 {
            let f = factor_integer(&BigInt::from(n));
            let prod: BigInt = f.iter().map(|(p, e)| num_traits::pow(p.clone(), *e as usize)).product();
            assert_eq!(prod, BigInt::from(n));
            assert!(f.iter().all(|(p, _)| is_prime(p)));
        }
    }

    #[test]
    fn large_semiprime_uses_rho() {
        let p = BigInt::from(1_000_003u64);
        let q = BigInt::from(1_000_033u64);
        let f = factor_integer(&(&p * &q * &p));
        assert_eq!(f, vec![(p, 2), (q, 1)]);
    }

    #[test]
    fn square_roots() {
        for p in [5u64, 13, 17, 29, 37, 41, 97, 1_000_000_009] {
            let bp = BigInt::from(p);
            let r = sqrt_mod(&(&bp - 1), &bp).unwrap();
            assert_eq!((&r * &r + 1) % &bp, BigInt::zero());
        }
        assert!(sqrt_mod(&BigInt::from(6), &BigInt::from(7)).is_none());
        let r = sqrt_mod(&BigInt::from(2), &BigInt::from(7)).unwrap();
        assert_eq!((&r * &r) % 7, BigInt::from(2));
    }
}
