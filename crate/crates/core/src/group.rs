//! Finitely generated abelian 2-groups `Z_2^r + sum_j Z/2^(e_j)`.

use std::fmt;

use serde::{Deserialize, Serialize};

/// `Z_2^free_rank + sum_j Z/2^(exponents[j])`, exponents sorted nonincreasing.
///
/// With `free_rank = 0` this is a finite abelian 2-group of order `2^(sum e_j)`.
/// The free part stands for the 2-adic integers and only shows up for
/// unsmashed spectra.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct FinAbGroup2 {
    exponents: Vec<u32>,
    free_rank: u32,
}

impl FinAbGroup2 {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn cyclic(e: u32) -> Self {
        Self::from_exponents([e])
    }

    /// Zero exponents are dropped, the rest sorted nonincreasing.
    pub fn from_exponents(exps: impl IntoIterator<Item = u32>) -> Self {
        let mut exponents: Vec<u32> = exps.into_iter().filter(|&e| e > 0).collect();
        exponents.sort_unstable_by(|a, b| b.cmp(a));
        FinAbGroup2 {
            exponents,
            free_rank: 0,
        }
    }

    pub fn with_free_rank(mut self, free_rank: u32) -> Self {
        self.free_rank = free_rank;
        self
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn free_rank(&self) -> u32 {
        self.free_rank
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.is_empty() && self.free_rank == 0
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// `log2 |G|`, or `None` for infinite groups.
    pub fn log2_order(&self) -> Option<u32> {
        self.is_finite().then(|| self.exponents.iter().sum())
    }

    /// Largest cyclic exponent; 0 for the trivial group.
    pub fn exponent(&self) -> u32 {
        self.exponents.first().copied().unwrap_or(0)
    }

    /// Number of cyclic summands, free ones included.
    pub fn rank(&self) -> u32 {
        self.exponents.len() as u32 + self.free_rank
    }

    /// Elementary abelian: nonzero and every summand is `Z/2`.
    pub fn is_elementary(&self) -> bool {
        self.free_rank == 0 && !self.exponents.is_empty() && self.exponents.iter().all(|&e| e == 1)
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        Self::from_exponents(self.exponents.iter().chain(&other.exponents).copied())
            .with_free_rank(self.free_rank + other.free_rank)
    }

    /// `G / 2^n G`.
    pub fn quotient_by_pow2(&self, n: u32) -> Self {
        Self::from_exponents(
            self.exponents
                .iter()
                .map(|&e| e.min(n))
                .chain(std::iter::repeat_n(n, self.free_rank as usize)),
        )
    }

    /// `G[2^n]`, the elements killed by `2^n`.
    pub fn torsion_pow2(&self, n: u32) -> Self {
        Self::from_exponents(self.exponents.iter().map(|&e| e.min(n)))
    }

    /// Torsion subgroup.
    pub fn torsion(&self) -> Self {
        Self::from_exponents(self.exponents.iter().copied())
    }

    /// All finite groups `G` fitting in `0 -> sub -> G -> quot -> 0`.
    ///
    /// For abelian p-groups such an extension exists iff the Littlewood-Richardson
    /// coefficient `c^G_{sub,quot}` is nonzero.  The split extension is always
    /// among the results.
    pub fn extensions(sub: &Self, quot: &Self) -> Vec<Self> {
        assert!(
            sub.is_finite() && quot.is_finite(),
            "extensions of finite groups only"
        );
        let (mu, nu) = (&sub.exponents, &quot.exponents);
        let n: u32 = mu.iter().chain(nu).sum();
        let max_len = mu.len() + nu.len();
        let max_part = mu.first().copied().unwrap_or(0) + nu.first().copied().unwrap_or(0);
        let mut out = Vec::new();
        for lambda in partitions(n, max_len, max_part) {
            if lr_positive(&lambda, mu, nu) {
                out.push(Self::from_exponents(lambda));
            }
        }
        out
    }
}

impl fmt::Display for FinAbGroup2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let mut parts: Vec<String> = Vec::new();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 {
                "Z_2".to_string()
            } else {
                format!("Z_2^{}", self.free_rank)
            });
        }
        for &e in &self.exponents {
            parts.push(if e == 1 {
                "Z/2".to_string()
            } else {
                format!("Z/2^{e}")
            });
        }
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for FinAbGroup2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Partitions of `n` into at most `max_len` parts, each at most `max_part`.
fn partitions(n: u32, max_len: usize, max_part: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max_len: usize, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        if cur.len() == max_len {
            return;
        }
        for p in (1..=cap.min(n)).rev() {
            cur.push(p);
            go(n - p, max_len, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, max_len, max_part, &mut Vec::new(), &mut out);
    out
}

/// Is there a Littlewood-Richardson tableau of shape `lambda / mu` and content `nu`?
fn lr_positive(lambda: &[u32], mu: &[u32], nu: &[u32]) -> bool {
    let rows = lambda.len();
    let mu_at = |r: usize| mu.get(r).copied().unwrap_or(0) as usize;
    if mu.len() > rows || (0..rows).any(|r| mu_at(r) > lambda[r] as usize) {
        return false;
    }
    if nu.is_empty() {
        return lambda
            .iter()
            .zip(mu.iter().chain(std::iter::repeat(&0)))
            .all(|(a, b)| a == b);
    }

    struct Search<'a> {
        lambda: &'a [u32],
        mu: Vec<usize>,
        nu: &'a [u32],
    }

    impl Search<'_> {
        // `prev` holds the filled entries of the previous row, indexed by column.
        fn row(&self, r: usize, used: &mut Vec<u32>, prev: &[Option<u8>]) -> bool {
            if r == self.lambda.len() {
                return used.iter().zip(self.nu).all(|(u, n)| u == n);
            }
            let start = self.mu[r];
            let len = self.lambda[r] as usize - start;
            let mut counts = vec![0u32; self.nu.len()];
            self.fill(r, 0, len, &mut counts, used, prev)
        }

        fn fill(
            &self,
            r: usize,
            letter: usize,
            remaining: usize,
            counts: &mut Vec<u32>,
            used: &mut Vec<u32>,
            prev: &[Option<u8>],
        ) -> bool {
            let m = self.nu.len();
            if letter == m - 1 {
                counts[letter] = remaining as u32;
                return self.try_row(r, counts, used, prev);
            }
            for c in 0..=remaining {
                counts[letter] = c as u32;
                if used[letter] + c as u32 > self.nu[letter] {
                    break;
                }
                if self.fill(r, letter + 1, remaining - c, counts, used, prev) {
                    return true;
                }
            }
            false
        }

        fn try_row(
            &self,
            r: usize,
            counts: &[u32],
            used: &mut Vec<u32>,
            prev: &[Option<u8>],
        ) -> bool {
            let m = self.nu.len();
            if (0..m).any(|k| used[k] + counts[k] > self.nu[k]) {
                return false;
            }
            // Reading the row right to left visits letters in decreasing order,
            // so the lattice condition reduces to one inequality per letter.
            if (1..m).any(|k| used[k - 1] < used[k] + counts[k]) {
                return false;
            }
            let width = self.lambda[0] as usize;
            let mut cells = vec![None; width];
            let mut col = self.mu[r];
            for (k, &c) in counts.iter().enumerate() {
                for _ in 0..c {
                    if let Some(above) = prev[col] {
                        if above as usize >= k {
                            return false;
                        }
                    }
                    cells[col] = Some(k as u8);
                    col += 1;
                }
            }
            for k in 0..m {
                used[k] += counts[k];
            }
            let ok = self.row(r + 1, used, &cells);
            for k in 0..m {
                used[k] -= counts[k];
            }
            ok
        }
    }

    let search = Search {
        lambda,
        mu: (0..rows).map(mu_at).collect(),
        nu,
    };
    let width = lambda[0] as usize;
    search.row(0, &mut vec![0; nu.len()], &vec![None; width])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(exps: &[u32]) -> FinAbGroup2 {
        FinAbGroup2::from_exponents(exps.iter().copied())
    }

    #[test]
    fn normal_form_and_order() {
        let x = g(&[1, 21, 0]);
        assert_eq!(x.exponents(), &[21, 1]);
        assert_eq!(x.log2_order(), Some(22));
        assert_eq!(x.to_string(), "Z/2^21 + Z/2");
        assert_eq!(FinAbGroup2::trivial().to_string(), "0");
        assert_eq!(FinAbGroup2::trivial().with_free_rank(1).log2_order(), None);
        assert!(g(&[1, 1]).is_elementary());
        assert!(!g(&[2, 1]).is_elementary());
    }

    #[test]
    fn quotients_and_torsion() {
        let x = g(&[3, 1]).with_free_rank(1);
        assert_eq!(x.quotient_by_pow2(2), g(&[2, 2, 1]));
        assert_eq!(x.torsion_pow2(2), g(&[2, 1]));
        assert_eq!(x.quotient_by_pow2(1).log2_order(), Some(3));
    }

    #[test]
    fn extensions_of_small_groups() {
        let mut e = FinAbGroup2::extensions(&g(&[1]), &g(&[1]));
        e.sort();
        assert_eq!(e, vec![g(&[1, 1]), g(&[2])]);

        let mut e = FinAbGroup2::extensions(&g(&[1]), &g(&[3]));
        e.sort();
        assert_eq!(e, vec![g(&[3, 1]), g(&[4])]);

        // Z/4 + Z/4 is a non-split extension of Z/2 + Z/4 by Z/2, with equal rank.
        let e = FinAbGroup2::extensions(&g(&[1]), &g(&[2, 1]));
        assert!(e.contains(&g(&[2, 2])));
        assert!(e.contains(&g(&[2, 1, 1])));
        assert!(e.contains(&g(&[3, 1])));
        assert!(!e.contains(&g(&[4])));

        let e = FinAbGroup2::extensions(&g(&[1, 1]), &g(&[1]));
        assert_eq!(e.len(), 2);
        assert!(e.contains(&g(&[2, 1])));

        assert_eq!(FinAbGroup2::extensions(&g(&[]), &g(&[5])), vec![g(&[5])]);
    }
}
