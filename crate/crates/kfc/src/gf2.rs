//! Dense bit-packed linear algebra over the two-element field.
//!
//! Vectors are little-endian u64 word arrays. Small systems only: the
//! complexes in play have at most a few hundred generators.

/// A vector of bits packed into u64 words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitVec {
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len_bits: usize) -> Self {
        BitVec { words: vec![0; len_bits.div_ceil(64).max(1)] }
    }

    pub fn set(&mut self, bit: usize) {
        self.words[bit / 64] |= 1 << (bit % 64);
    }

    pub fn toggle(&mut self, bit: usize) {
        self.words[bit / 64] ^= 1 << (bit % 64);
    }

    pub fn get(&self, bit: usize) -> bool {
        self.words[bit / 64] >> (bit % 64) & 1 == 1
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn xor_in(&mut self, other: &BitVec) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Index of the highest set bit, if any.
    pub fn leading_bit(&self) -> Option<usize> {
        for (i, w) in self.words.iter().enumerate().rev() {
            if *w != 0 {
                return Some(i * 64 + 63 - w.leading_zeros() as usize);
            }
        }
        None
    }
}

/// Rank of the span of the given vectors.
pub fn rank(vectors: impl IntoIterator<Item = BitVec>) -> usize {
    let mut basis: std::collections::BTreeMap<usize, BitVec> = Default::default();
    for mut v in vectors {
        while let Some(lead) = v.leading_bit() {
            match basis.get(&lead) {
                Some(b) => v.xor_in(b),
                None => {
                    basis.insert(lead, v);
                    break;
                }
            }
        }
    }
    basis.len()
}

/// Solves `A x = rhs` where the columns of A are given as bit vectors.
///
/// Returns one particular solution as the set of chosen column indices
/// (free variables are set to zero, pivots are chosen left to right),
/// or `None` when the system is inconsistent.
pub fn solve(columns: &[BitVec], rhs: &BitVec) -> Option<Vec<usize>> {
    // Forward elimination keyed by leading bit, tracking the column
    // combination that produced each basis vector.
    let mut basis: std::collections::BTreeMap<usize, (BitVec, Vec<usize>)> = Default::default();
    for (i, col) in columns.iter().enumerate() {
        let mut v = col.clone();
        let mut combo = vec![i];
        while let Some(lead) = v.leading_bit() {
            match basis.get(&lead) {
                Some((b, bc)) => {
                    v.xor_in(b);
                    combo.extend_from_slice(bc);
                }
                None => {
                    basis.insert(lead, (v, combo));
                    break;
                }
            }
        }
    }
    let mut target = rhs.clone();
    let mut combo: Vec<usize> = Vec::new();
    while let Some(lead) = target.leading_bit() {
        let (b, bc) = basis.get(&lead)?;
        target.xor_in(b);
        combo.extend_from_slice(bc);
    }
    // Indices chosen an even number of times cancel mod 2.
    combo.sort_unstable();
    let mut out = Vec::new();
    let mut i = 0;
    while i < combo.len() {
        let j = combo[i..].iter().take_while(|&&x| x == combo[i]).count();
        if j % 2 == 1 {
            out.push(combo[i]);
        }
        i += j;
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vec_of(bits: &[usize], len: usize) -> BitVec {
        let mut v = BitVec::zeros(len);
        for &b in bits {
            v.set(b);
        }
        v
    }

    #[test]
    fn rank_counts_independent_vectors() {
        let vs = vec![
            vec_of(&[0], 4),
            vec_of(&[1], 4),
            vec_of(&[0, 1], 4),
            vec_of(&[2, 3], 4),
        ];
        assert_eq!(rank(vs), 3);
        assert_eq!(rank(vec![BitVec::zeros(4)]), 0);
    }

    #[test]
    fn solve_finds_combinations() {
        // Columns: {0}, {1}, {0,1,2}; rhs {2} = col0 + col1 + col2.
        let cols = vec![vec_of(&[0], 3), vec_of(&[1], 3), vec_of(&[0, 1, 2], 3)];
        let rhs = vec_of(&[2], 3);
        let sol = solve(&cols, &rhs).unwrap();
        let mut acc = BitVec::zeros(3);
        for i in sol {
            acc.xor_in(&cols[i]);
        }
        assert_eq!(acc, rhs);
    }

    #[test]
    fn solve_detects_inconsistency() {
        let cols = vec![vec_of(&[0], 2)];
        let rhs = vec_of(&[1], 2);
        assert!(solve(&cols, &rhs).is_none());
    }

    #[test]
    fn solve_handles_redundant_columns() {
        let cols = vec![vec_of(&[0, 1], 3), vec_of(&[0, 1], 3), vec_of(&[1, 2], 3)];
        let rhs = vec_of(&[0, 2], 3);
        let sol = solve(&cols, &rhs).unwrap();
        let mut acc = BitVec::zeros(3);
        for i in sol {
            acc.xor_in(&cols[i]);
        }
        assert_eq!(acc, rhs);
    }
}
