use std::fmt;

use crate::error::{Error, Result};

/// A strictly increasing tuple of 1-based node indices `⟨m₁ < … < m_j⟩`.
///
/// Flipping the bits at these indices gives one Hamming-distance-`j`
/// neighbour; [`mv_increment`] walks all of them in lexicographic order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MutationVector {
    m: Vec<usize>,
}

impl MutationVector {
    /// The first tuple `⟨1, 2, …, j⟩`.
    pub fn first(j: usize, n: usize) -> Result<Self> {
        if j == 0 || j > n {
            return Err(Error::InvalidParameter(format!(
                "mutation length {j} for {n} nodes"
            )));
        }
        Ok(MutationVector {
            m: (1..=j).collect(),
        })
    }

    pub fn new(m: Vec<usize>, n: usize) -> Result<Self> {
        let valid = !m.is_empty()
            && m.windows(2).all(|w| w[0] < w[1])
            && m[0] >= 1
            && *m.last().unwrap() <= n;
        if !valid {
            return Err(Error::InvalidParameter(format!(
                "{m:?} is not a strictly increasing tuple in 1..={n}"
            )));
        }
        Ok(MutationVector { m })
    }

    pub fn len(&self) -> usize {
        self.m.len()
    }

    pub fn is_empty(&self) -> bool {
        self.m.is_empty()
    }

    pub fn indices(&self) -> &[usize] {
        &self.m
    }

    /// Advances in place; returns `false` (leaving `self` unchanged) once the
    /// last tuple `⟨n−j+1, …, n⟩` has been passed.
    pub(crate) fn advance(&mut self, n: usize) -> bool {
        let j = self.m.len();
        // Rightmost position that can still grow; positions to its right carry.
        let Some(i) = (0..j).rev().find(|&i| self.m[i] < n - (j - 1 - i)) else {
            return false;
        };
        self.m[i] += 1;
        for t in i + 1..j {
            self.m[t] = self.m[t - 1] + 1;
        }
        true
    }
}

impl fmt::Debug for MutationVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("⟨")?;
        for (k, x) in self.m.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("⟩")
    }
}

/// Lexicographic successor with ripple carry, or `None` when exhausted.
pub fn mv_increment(m: &MutationVector, n: usize) -> Option<MutationVector> {
    let mut next = m.clone();
    next.advance(n).then_some(next)
}
