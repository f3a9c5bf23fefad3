//! Basis bookkeeping for `g^⊗n` and `Λ^n g`.
//!
//! Tensor words are encoded big-endian in base `dim`. Increasing tuples are
//! ranked colexicographically: `(i_1 < … < i_n) ↦ Σ_k C(i_k, k)`.

/// Words `(i_1, …, i_n)` with `0 ≤ i_k < dim`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TensorIndexer {
    algebra_dim: usize,
    degree: usize,
}

impl TensorIndexer {
    pub fn new(algebra_dim: usize, degree: usize) -> Self {
        TensorIndexer { algebra_dim, degree }
    }

    pub fn algebra_dim(&self) -> usize {
        self.algebra_dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// `dim^n`, or `None` on overflow.
    pub fn checked_len(&self) -> Option<usize> {
        self.algebra_dim.checked_pow(u32::try_from(self.degree).ok()?)
    }

    pub fn len(&self) -> usize {
        self.checked_len().expect("tensor power dimension overflows usize")
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn encode(&self, word: &[usize]) -> usize {
        debug_assert_eq!(word.len(), self.degree);
        word.iter().fold(0, |acc, &i| {
            debug_assert!(i < self.algebra_dim);
            acc * self.algebra_dim + i
        })
    }

    pub fn decode(&self, mut index: usize) -> Vec<usize> {
        let mut word = vec![0; self.degree];
        for slot in word.iter_mut().rev() {
            *slot = index % self.algebra_dim;
            index /= self.algebra_dim;
        }
        word
    }
}

/// Strictly increasing tuples `i_1 < … < i_n` with `i_k < dim`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExteriorIndexer {
    algebra_dim: usize,
    degree: usize,
    /// `binom[a][b] = C(a, b)` for `a ≤ dim`, `b ≤ degree`.
    binom: Vec<Vec<usize>>,
}

impl ExteriorIndexer {
    pub fn new(algebra_dim: usize, degree: usize) -> Self {
        let mut binom = vec![vec![0usize; degree + 1]; algebra_dim + 1];
        for a in 0..=algebra_dim {
            binom[a][0] = 1;
            for b in 1..=degree.min(a) {
                binom[a][b] = binom[a - 1][b - 1] + if b <= a - 1 { binom[a - 1][b] } else { 0 };
            }
        }
        ExteriorIndexer { algebra_dim, degree, binom }
    }

    pub fn algebra_dim(&self) -> usize {
        self.algebra_dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// `C(dim, n)`.
    pub fn len(&self) -> usize {
        self.binom[self.algebra_dim][self.degree]
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn rank(&self, tuple: &[usize]) -> usize {
        debug_assert_eq!(tuple.len(), self.degree);
        debug_assert!(tuple.windows(2).all(|w| w[0] < w[1]));
        tuple.iter().enumerate().map(|(k, &i)| self.binom[i][k + 1]).sum()
    }

    pub fn unrank(&self, mut index: usize) -> Vec<usize> {
        let mut tuple = vec![0; self.degree];
        let mut top = self.algebra_dim;
        for k in (1..=self.degree).rev() {
            // Largest i < top with C(i, k) ≤ index.
            let mut i = top - 1;
            while self.binom[i][k] > index {
                i -= 1;
            }
            tuple[k - 1] = i;
            index -= self.binom[i][k];
            top = i;
        }
        tuple
    }

    /// Sorts `word` into an increasing tuple and returns it with the sign of
    /// the sorting permutation, or `None` if an index repeats.
    pub fn sort_with_sign(word: &[usize]) -> Option<(Vec<usize>, bool)> {
        let mut tuple = word.to_vec();
        let mut negative = false;
        // Insertion sort; each adjacent swap is one transposition.
        for a in 1..tuple.len() {
            let mut b = a;
            while b > 0 && tuple[b - 1] > tuple[b] {
                tuple.swap(b - 1, b);
                negative = !negative;
                b -= 1;
            }
            if b > 0 && tuple[b - 1] == tuple[b] {
                return None;
            }
        }
        Some((tuple, negative))
    }
}
