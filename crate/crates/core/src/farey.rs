//! Exact generation and counting of Farey sequences.
//!
//! `F_n` is the increasing list of reduced fractions in `[0, 1]` whose
//! denominators do not exceed `n`. Generation walks the sequence with the
//! classical neighbour recurrence: if `a/b < c/d` are adjacent in `F_n`, the
//! next term is `(k c - a) / (k d - b)` with `k = (n + b) / d` (integer
//! division). This needs O(1) integer state and O(N) time.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::FareyError;

/// Largest supported sequence index.
///
/// The recurrence itself only forms products `k * c` and `k * d`, both bounded
/// by `n + b <= 2n`, so 64-bit arithmetic is nowhere near its limit. The bound
/// exists because `F_n` holds about `0.304 n^2` points: at `n = 10^4` that is
/// roughly 3.04e7 fractions (about 490 MB), and the exact statistics in
/// [`crate::mmd`] accumulate per-denominator sums in `u128`, which stays
/// safe well beyond this index.
pub const MAX_ORDER: u32 = 10_000;

/// A reduced fraction `num/den` with `den > 0`.
///
/// Constructors reduce, so equality is componentwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Rational {
    num: u64,
    den: u64,
}

impl Rational {
    pub const ZERO: Rational = Rational { num: 0, den: 1 };
    pub const ONE: Rational = Rational { num: 1, den: 1 };

    /// Builds `num/den` in lowest terms. Returns `None` when `den == 0`.
    pub fn new(num: u64, den: u64) -> Option<Self> {
        if den == 0 {
            return None;
        }
        let g = num.gcd(&den);
        Some(Rational { num: num / g, den: den / g })
    }

    /// Caller guarantees `gcd(num, den) == 1` and `den > 0`.
    pub(crate) const fn new_unchecked(num: u64, den: u64) -> Self {
        Rational { num, den }
    }

    pub fn num(self) -> u64 {
        self.num
    }

    pub fn den(self) -> u64 {
        self.den
    }

    /// `1 - self`, for values in `[0, 1]`.
    pub fn reflect(self) -> Option<Self> {
        (self.num <= self.den).then(|| Rational { num: self.den - self.num, den: self.den })
    }

    /// Nearest `f64` (a single correctly rounded division).
    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (u128::from(self.num) * u128::from(other.den))
            .cmp(&(u128::from(other.num) * u128::from(self.den)))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Rational {
    type Err = FareyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || FareyError::Parse(s.to_owned());
        let (p, q) = s.trim().split_once('/').ok_or_else(bad)?;
        let p: u64 = p.trim().parse().map_err(|_| bad())?;
        let q: u64 = q.trim().parse().map_err(|_| bad())?;
        Rational::new(p, q).ok_or_else(bad)
    }
}

/// The Farey sequence `F_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FareySequence {
    order: u32,
    points: Vec<Rational>,
}

impl FareySequence {
    /// The sequence index `n`.
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn points(&self) -> &[Rational] {
        &self.points
    }

    /// `N = |F_n|`.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The points as `f64`, each rounded to nearest.
    pub fn to_f64(&self) -> Vec<f64> {
        self.points.iter().map(|r| r.to_f64()).collect()
    }

    pub fn into_points(self) -> Vec<Rational> {
        self.points
    }
}

/// Whether `n` is a valid Farey order, `1 ≤ n ≤ MAX_ORDER`.
pub fn check_order(n: u32) -> Result<(), FareyError> {
    if n == 0 {
        Err(FareyError::ZeroOrder)
    } else if n > MAX_ORDER {
        Err(FareyError::OrderTooLarge { n, max: MAX_ORDER })
    } else {
        Ok(())
    }
}

/// Generates `F_n` with the next-term neighbour recurrence.
pub fn farey_sequence(n: u32) -> Result<FareySequence, FareyError> {
    check_order(n)?;
    let n64 = u64::from(n);
    let mut points = Vec::with_capacity(farey_size(n)? as usize);

    let (mut a, mut b, mut c, mut d) = (0u64, 1u64, 1u64, n64);
    points.push(Rational::ZERO);
    while (c, d) != (1, 1) {
        points.push(Rational::new_unchecked(c, d));
        let k = (n64 + b) / d;
        let (e, f) = (k * c - a, k * d - b);
        (a, b, c, d) = (c, d, e, f);
    }
    points.push(Rational::ONE);
    Ok(FareySequence { order: n, points })
}

/// Euler's totient `phi(1..=n)` by a linear sieve.
pub fn totient_sieve(n: u32) -> Vec<u32> {
    let n = n as usize;
    let mut phi = vec![0u32; n + 1];
    let mut primes: Vec<u32> = Vec::new();
    if n >= 1 {
        phi[1] = 1;
    }
    for i in 2..=n {
        if phi[i] == 0 {
            phi[i] = (i - 1) as u32;
            primes.push(i as u32);
        }
        for &p in &primes {
            let ip = i * p as usize;
            if ip > n {
                break;
            }
            if i % p as usize == 0 {
                phi[ip] = phi[i] * p;
                break;
            }
            phi[ip] = phi[i] * (p - 1);
        }
    }
    phi.remove(0);
    phi
}

/// `|F_n| = 1 + sum_{k<=n} phi(k)`, without building the sequence.
pub fn farey_size(n: u32) -> Result<u64, FareyError> {
    check_order(n)?;
    Ok(1 + totient_sieve(n).iter().map(|&p| u64::from(p)).sum::<u64>())
}

/// True iff every adjacent pair `a/b, c/d` satisfies `b c - a d = 1`.
///
/// A repeated point gives `0`, a decreasing pair a negative value, so both
/// fail the check.
pub fn check_neighbors(points: &[Rational]) -> bool {
    points.windows(2).all(|w| {
        let (a, b) = (i128::from(w[0].num), i128::from(w[0].den));
        let (c, d) = (i128::from(w[1].num), i128::from(w[1].den));
        b * c - a * d == 1
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: u64, q: u64) -> Rational {
        Rational::new(p, q).unwrap()
    }

    #[test]
    fn small_listings() {
        assert_eq!(farey_sequence(1).unwrap().points(), &[r(0, 1), r(1, 1)]);
        assert_eq!(farey_sequence(2).unwrap().points(), &[r(0, 1), r(1, 2), r(1, 1)]);
        let f5: Vec<_> = [(0, 1), (1, 5), (1, 4), (1, 3), (2, 5), (1, 2), (3, 5), (2, 3), (3, 4), (4, 5), (1, 1)]
            .iter()
            .map(|&(p, q)| r(p, q))
            .collect();
        assert_eq!(farey_sequence(5).unwrap().points(), f5.as_slice());
    }

    #[test]
    fn sizes() {
        assert_eq!(farey_size(1).unwrap(), 2);
        assert_eq!(farey_size(5).unwrap(), 11);
        assert_eq!(farey_size(250).unwrap(), 19025);
    }

    #[test]
    fn order_bounds() {
        assert_eq!(farey_sequence(0), Err(FareyError::ZeroOrder));
        assert!(matches!(farey_size(MAX_ORDER + 1), Err(FareyError::OrderTooLarge { .. })));
        assert!(farey_size(MAX_ORDER).is_ok());
    }

    #[test]
    fn totients() {
        assert_eq!(totient_sieve(1), vec![1]);
        assert_eq!(totient_sieve(5), vec![1, 1, 2, 2, 4]);
        // coprime-residue count
        let phi = totient_sieve(300);
        for (k, &p) in (1..=300u64).zip(&phi) {
            let brute = (1..=k).filter(|&j| j.gcd(&k) == 1).count() as u32;
            assert_eq!(p, brute, "phi({k})");
        }
    }

    #[test]
    fn neighbors() {
        assert!(check_neighbors(farey_sequence(1).unwrap().points()));
        assert!(check_neighbors(&[r(1, 3), r(2, 5)]));
        assert!(!check_neighbors(&[r(0, 1), r(1, 2), r(1, 2), r(1, 1)]));
        assert!(!check_neighbors(&[r(1, 2), r(0, 1)]));
    }

    #[test]
    fn rational_basics() {
        assert_eq!(r(2, 4), r(1, 2));
        assert_eq!(Rational::new(1, 0), None);
        assert_eq!("3/6".parse::<Rational>().unwrap(), r(1, 2));
        assert!("3".parse::<Rational>().is_err());
        assert_eq!(r(2, 5).to_string(), "2/5");
        assert_eq!(r(2, 5).reflect(), Some(r(3, 5)));
        assert!(r(1, 3) < r(2, 5));
    }
}
