//! Small-prime utilities shared by the sampling and certification code.

/// Deterministic primality test for `u64` (Miller–Rabin with the fixed base set
/// that is exact below 2^64).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo the prime `p`; `a` must be nonzero mod `p`.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

/// Iterator over the primes in increasing order, starting at 2.
#[derive(Debug, Clone, Default)]
pub struct Primes {
    found: Vec<u64>,
}

impl Primes {
    pub fn new() -> Self {
        Self::default()
    }
}

impl Iterator for Primes {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let next = match self.found.last() {
            None => 2,
            Some(2) => 3,
            Some(&last) => {
                let mut c = last + 2;
                loop {
                    let composite = self
                        .found
                        .iter()
                        .skip(1)
                        .take_while(|&&p| p * p <= c)
                        .any(|&p| c % p == 0);
                    if !composite {
                        break c;
                    }
                    c += 2;
                }
            }
        };
        self.found.push(next);
        Some(next)
    }
}

/// Odd primes `≤ bound`.
pub fn odd_primes_up_to(bound: u64) -> Vec<u64> {
    Primes::new().skip(1).take_while(|&p| p <= bound).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn iterator_matches_primality_test() {
        let listed: Vec<u64> = Primes::new().take_while(|&p| p < 2000).collect();
        let tested: Vec<u64> = (0..2000).filter(|&n| is_prime(n)).collect();
        assert_eq!(listed, tested);
        assert_eq!(listed.len(), 303);
    }

    #[test]
    fn large_primes() {
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(1_000_000_007 * 3));
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2, 3, 5, 7
    }

    #[test]
    fn modular_helpers() {
        assert_eq!(pow_mod(2, 10, 1000), 24);
        assert_eq!(mul_mod(inv_mod(7, 13), 7, 13), 1);
        assert_eq!(odd_primes_up_to(13), vec![3, 5, 7, 11, 13]);
    }
}
