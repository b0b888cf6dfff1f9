//! N-to-1 qudit stabilizer codes, their canonical form and logical Paulis.
//!
//! A code is stored as its `(N-1) x 2N` generator matrix `M = (alpha | beta)`
//! together with a syndrome `s`: row `i` is the label `(a_i | b_i)` of a
//! stabilizer whose eigenvalue on the codespace is `w^{s_i}`. Stabilizers are
//! read in the symmetric (Weyl) ordering `w^{-a.b/2} Z^a X^b`, for which
//! raising to a power and multiplying commuting stabilizers are linear on both
//! the labels and the syndrome. This is what makes the phase-space membership
//! test `M (x; -z) = s` exact.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::zd::{symplectic_product, Prime, SymplecticVector, ZdError, ZdMatrix, ZdVector};

/// Why a generator matrix does not define a valid code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvalidCode {
    #[error("stabilizers {0} and {1} do not commute")]
    NonCommuting(usize, usize),
    #[error("generators have rank {rank}, expected {expected}")]
    RankDefect { rank: usize, expected: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("a code needs at least 2 qudits, got {0}")]
    TooFewQudits(usize),
    #[error("generator matrix must be {expected_rows}x{expected_cols}, got {rows}x{cols}")]
    Shape {
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },
    #[error("syndrome has length {0}, expected {1}")]
    SyndromeLength(usize, usize),
    #[error("entry {value} out of range for d = {d}")]
    EntryOutOfRange { value: i64, d: u32 },
    #[error("invalid code: {0}")]
    Invalid(#[from] InvalidCode),
    #[error(transparent)]
    Zd(#[from] ZdError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StabilizerCode {
    modulus: Prime,
    num_qudits: usize,
    generators: ZdMatrix,
    syndrome: ZdVector,
}

impl StabilizerCode {
    pub fn new(generators: ZdMatrix, syndrome: ZdVector) -> Result<Self, CodeError> {
        let modulus = generators.modulus();
        if syndrome.modulus() != modulus {
            return Err(ZdError::ModulusMismatch(modulus.get(), syndrome.modulus().get()).into());
        }
        let num_qudits = generators.rows() + 1;
        if num_qudits < 2 {
            return Err(CodeError::TooFewQudits(num_qudits));
        }
        if generators.cols() != 2 * num_qudits {
            return Err(CodeError::Shape {
                rows: generators.rows(),
                cols: generators.cols(),
                expected_rows: num_qudits - 1,
                expected_cols: 2 * num_qudits,
            });
        }
        if syndrome.len() != num_qudits - 1 {
            return Err(CodeError::SyndromeLength(syndrome.len(), num_qudits - 1));
        }
        Ok(StabilizerCode {
            modulus,
            num_qudits,
            generators,
            syndrome,
        })
    }

    /// Builds a code from `[a_1..a_N, b_1..b_N]` rows with zero syndrome.
    pub fn from_rows<R: AsRef<[i64]>>(d: Prime, rows: &[R]) -> Result<Self, CodeError> {
        let generators = ZdMatrix::from_rows(d, rows)?;
        let syndrome = ZdVector::zeros(d, generators.rows());
        Self::new(generators, syndrome)
    }

    /// Checked constructor for external input: `num_qudits` is the declared
    /// `N` and every entry must already lie in `[0, d)`.
    pub fn from_parts(
        d: Prime,
        num_qudits: usize,
        rows: &[Vec<i64>],
        syndrome: &[i64],
    ) -> Result<Self, CodeError> {
        if num_qudits < 2 {
            return Err(CodeError::TooFewQudits(num_qudits));
        }
        let in_range = |&x: &i64| x >= 0 && x < d.get() as i64;
        if let Some(&bad) = rows.iter().flatten().chain(syndrome).find(|x| !in_range(x)) {
            return Err(CodeError::EntryOutOfRange {
                value: bad,
                d: d.get(),
            });
        }
        let cols = rows.first().map_or(2 * num_qudits, Vec::len);
        if rows.len() != num_qudits - 1 || rows.iter().any(|r| r.len() != 2 * num_qudits) {
            return Err(CodeError::Shape {
                rows: rows.len(),
                cols,
                expected_rows: num_qudits - 1,
                expected_cols: 2 * num_qudits,
            });
        }
        let generators = ZdMatrix::from_rows(d, rows)?;
        Self::new(generators, ZdVector::new(d, syndrome.iter().copied()))
    }

    pub fn with_syndrome(mut self, syndrome: ZdVector) -> Result<Self, CodeError> {
        if syndrome.len() != self.num_qudits - 1 {
            return Err(CodeError::SyndromeLength(
                syndrome.len(),
                self.num_qudits - 1,
            ));
        }
        self.syndrome = syndrome;
        Ok(self)
    }

    pub fn modulus(&self) -> Prime {
        self.modulus
    }

    pub fn num_qudits(&self) -> usize {
        self.num_qudits
    }

    pub fn num_stabilizers(&self) -> usize {
        self.num_qudits - 1
    }

    pub fn generators(&self) -> &ZdMatrix {
        &self.generators
    }

    pub fn syndrome(&self) -> &ZdVector {
        &self.syndrome
    }

    pub fn stabilizer(&self, i: usize) -> SymplecticVector {
        SymplecticVector::from_row(self.modulus, self.generators.row(i)).expect("even row length")
    }

    pub fn stabilizers(&self) -> impl Iterator<Item = SymplecticVector> + '_ {
        (0..self.num_stabilizers()).map(|i| self.stabilizer(i))
    }

    /// Checks pairwise commutation, then linear independence.
    pub fn validate(&self) -> Result<(), InvalidCode> {
        let rows: Vec<_> = self.stabilizers().collect();
        for i in 0..rows.len() {
            for j in i + 1..rows.len() {
                if symplectic_product(&rows[i], &rows[j]).expect("same shape") != 0 {
                    return Err(InvalidCode::NonCommuting(i, j));
                }
            }
        }
        let rank = self.generators.rank();
        if rank != self.num_stabilizers() {
            return Err(InvalidCode::RankDefect {
                rank,
                expected: self.num_stabilizers(),
            });
        }
        Ok(())
    }

    /// Relabels qudits: qudit `j` of the result is qudit `perm[j]` of `self`.
    pub fn permute_qudits(&self, perm: &[usize]) -> StabilizerCode {
        let n = self.num_qudits;
        let cols: Vec<usize> = perm
            .iter()
            .copied()
            .chain(perm.iter().map(|&k| k + n))
            .collect();
        StabilizerCode {
            generators: self.generators.select_columns(&cols),
            ..self.clone()
        }
    }

    pub fn canonicalize(&self) -> Result<CanonicalCode, CodeError> {
        self.validate()?;
        Ok(Canonicalizer::new(self).run())
    }

    pub fn logical_operators(&self) -> Result<LogicalPair, CodeError> {
        Ok(self.canonicalize()?.logical_operators())
    }

    pub fn is_trivial(&self) -> Result<bool, CodeError> {
        Ok(self.canonicalize()?.is_trivial())
    }
}

/// Canonical decomposition
///
/// ```text
/// ( 1_n  A  vecA | B  0    vecB )
/// ( 0    0  0    | C  1_m  vecC )
/// ```
///
/// in a qudit order given by `column_permutation`: canonical column `j` is
/// original qudit `column_permutation[j]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CanonicalCode {
    pub modulus: Prime,
    pub n: usize,
    pub m: usize,
    /// n x m
    pub a: ZdMatrix,
    /// n x n
    pub b: ZdMatrix,
    /// m x n
    pub c: ZdMatrix,
    pub vec_a: ZdVector,
    pub vec_b: ZdVector,
    pub vec_c: ZdVector,
    pub column_permutation: Vec<usize>,
    /// Syndrome of the canonical rows, transformed along with the row operations.
    pub syndrome: ZdVector,
}

impl CanonicalCode {
    pub fn num_qudits(&self) -> usize {
        self.n + self.m + 1
    }

    /// `vecA`, `vecB` and `vecC` all vanish: the code only prepares a
    /// stabilizer state on `N - 1` qudits and passes the last one through.
    pub fn is_trivial(&self) -> bool {
        self.vec_a.is_zero() && self.vec_b.is_zero() && self.vec_c.is_zero()
    }

    /// The canonical generator matrix, in canonical column order.
    pub fn matrix(&self) -> ZdMatrix {
        let (n, m) = (self.n, self.m);
        let nq = self.num_qudits();
        let mut mat = ZdMatrix::zeros(self.modulus, n + m, 2 * nq);
        for i in 0..n {
            mat[(i, i)] = 1;
            for j in 0..m {
                mat[(i, n + j)] = self.a[(i, j)];
            }
            mat[(i, nq - 1)] = self.vec_a[i];
            for j in 0..n {
                mat[(i, nq + j)] = self.b[(i, j)];
            }
            mat[(i, 2 * nq - 1)] = self.vec_b[i];
        }
        for i in 0..m {
            for j in 0..n {
                mat[(n + i, nq + j)] = self.c[(i, j)];
            }
            mat[(n + i, nq + n + i)] = 1;
            mat[(n + i, 2 * nq - 1)] = self.vec_c[i];
        }
        mat
    }

    /// The code spanned by the canonical rows, in canonical qudit order.
    pub fn canonical_order_code(&self) -> StabilizerCode {
        StabilizerCode::new(self.matrix(), self.syndrome.clone())
            .expect("canonical blocks are well-shaped")
    }

    /// Reassembles the canonical rows in the original qudit order.
    pub fn to_code(&self) -> StabilizerCode {
        let code = self.canonical_order_code();
        code.permute_qudits(&invert_permutation(&self.column_permutation))
    }

    /// Logical pair in canonical column order, before undoing the permutation.
    pub fn canonical_logical_operators(&self) -> LogicalPair {
        let p = self.modulus;
        let (n, m) = (self.n, self.m);
        let nq = self.num_qudits();
        let mut za = vec![0; nq];
        let mut zb = vec![0; nq];
        for j in 0..m {
            za[n + j] = p.neg(self.vec_c[j]);
        }
        za[nq - 1] = 1;
        zb[..n].copy_from_slice(&self.vec_b.as_slice()[..n]);
        let xa = vec![0; nq];
        let mut xb = vec![0; nq];
        for (slot, &a) in xb.iter_mut().zip(&self.vec_a.as_slice()[..n]) {
            *slot = p.neg(a);
        }
        xb[nq - 1] = 1;
        LogicalPair {
            z: SymplecticVector::new(p, za, zb).expect("equal lengths"),
            x: SymplecticVector::new(p, xa, xb).expect("equal lengths"),
        }
    }

    /// Logical `Z_L` (the `u = 1, v = 0` member of the allowed family) and
    /// `X_L` (`u = 0, v = 1`), expressed in the original qudit order.
    pub fn logical_operators(&self) -> LogicalPair {
        let inv = invert_permutation(&self.column_permutation);
        let canon = self.canonical_logical_operators();
        LogicalPair {
            z: canon.z.permute(&inv),
            x: canon.x.permute(&inv),
        }
    }

    /// Equality used for deduplication: identical blocks and syndrome,
    /// regardless of which qudit exchanges produced them.
    pub fn same_form(&self, other: &CanonicalCode) -> bool {
        self.modulus == other.modulus
            && self.n == other.n
            && self.m == other.m
            && self.a == other.a
            && self.b == other.b
            && self.c == other.c
            && self.vec_a == other.vec_a
            && self.vec_b == other.vec_b
            && self.vec_c == other.vec_c
            && self.syndrome == other.syndrome
    }
}

/// `inv[perm[j]] = j`.
pub fn invert_permutation(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (j, &k) in perm.iter().enumerate() {
        inv[k] = j;
    }
    inv
}

/// Logical Pauli labels with `<Z_L, X_L> = 1`, i.e. `Z_L X_L = w X_L Z_L`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LogicalPair {
    pub z: SymplecticVector,
    pub x: SymplecticVector,
}

impl LogicalPair {
    /// Both operators commute with every stabilizer and pair to 1.
    pub fn check(&self, code: &StabilizerCode) -> bool {
        let commute = code.stabilizers().all(|s| {
            symplectic_product(&s, &self.z) == Ok(0) && symplectic_product(&s, &self.x) == Ok(0)
        });
        commute && symplectic_product(&self.z, &self.x) == Ok(1)
    }
}

/// Row and qudit-exchange elimination that records every operation on the
/// syndrome and the column permutation.
struct Canonicalizer {
    p: Prime,
    nq: usize,
    mat: ZdMatrix,
    syn: Vec<u32>,
    perm: Vec<usize>,
}

impl Canonicalizer {
    fn new(code: &StabilizerCode) -> Self {
        Canonicalizer {
            p: code.modulus,
            nq: code.num_qudits,
            mat: code.generators.clone(),
            syn: code.syndrome.as_slice().to_vec(),
            perm: (0..code.num_qudits).collect(),
        }
    }

    fn swap_qudits(&mut self, i: usize, j: usize) {
        if i != j {
            self.mat.swap_columns(i, j);
            self.mat.swap_columns(self.nq + i, self.nq + j);
            self.perm.swap(i, j);
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.mat.swap_rows(i, j);
        self.syn.swap(i, j);
    }

    fn scale_row(&mut self, i: usize, c: u32) {
        self.mat.scale_row(i, c);
        self.syn[i] = self.p.mul(self.syn[i], c);
    }

    fn add_row_multiple(&mut self, dst: usize, src: usize, c: u32) {
        self.mat.add_row_multiple(dst, src, c);
        self.syn[dst] = self.p.add(self.syn[dst], self.p.mul(c, self.syn[src]));
    }

    /// Places pivots at qudit positions `first..` using matrix column
    /// `offset + position`, working on rows `row_start..`. Whenever the
    /// current position has no usable entry, the nearest qudit to its right
    /// that has one is exchanged into place. Returns the number of pivots.
    fn eliminate(&mut self, first: usize, offset: usize, row_start: usize) -> usize {
        let rows = self.mat.rows();
        let mut r = row_start;
        let mut q = first;
        while r < rows && q < self.nq {
            let has_entry =
                |me: &Self, col: usize| (r..rows).find(|&i| me.mat[(i, offset + col)] != 0);
            let pivot_row = match has_entry(self, q) {
                Some(i) => i,
                None => match (q + 1..self.nq).find(|&c| has_entry(self, c).is_some()) {
                    Some(c) => {
                        self.swap_qudits(q, c);
                        has_entry(self, q).expect("just swapped in")
                    }
                    None => break,
                },
            };
            let col = offset + q;
            self.swap_rows(r, pivot_row);
            let inv = self.p.inv(self.mat[(r, col)]).expect("nonzero pivot");
            self.scale_row(r, inv);
            for i in 0..rows {
                let v = self.mat[(i, col)];
                if i != r && v != 0 {
                    self.add_row_multiple(i, r, self.p.neg(v));
                }
            }
            r += 1;
            q += 1;
        }
        r - row_start
    }

    fn run(mut self) -> CanonicalCode {
        let nq = self.nq;
        let n = self.eliminate(0, 0, 0);
        let m = self.eliminate(n, nq, n);
        debug_assert_eq!(n + m, nq - 1, "valid codes have full rank");
        let p = self.p;
        let mat = &self.mat;
        let last = nq - 1;
        CanonicalCode {
            modulus: p,
            n,
            m,
            a: ZdMatrix::from_fn(p, n, m, |i, j| mat[(i, n + j)] as i64),
            b: ZdMatrix::from_fn(p, n, n, |i, j| mat[(i, nq + j)] as i64),
            c: ZdMatrix::from_fn(p, m, n, |i, j| mat[(n + i, nq + j)] as i64),
            vec_a: ZdVector::from_reduced(p, (0..n).map(|i| mat[(i, last)]).collect()),
            vec_b: ZdVector::from_reduced(p, (0..n).map(|i| mat[(i, nq + last)]).collect()),
            vec_c: ZdVector::from_reduced(p, (0..m).map(|i| mat[(n + i, nq + last)]).collect()),
            column_permutation: self.perm,
            syndrome: ZdVector::from_reduced(p, self.syn),
        }
    }
}

/// Samples a valid code with zero syndrome, deterministic in `seed`.
///
/// Rows are drawn one at a time, uniformly among the labels that commute with
/// every row kept so far, and kept only when they are independent of them.
/// This has the same distribution as drawing uniform rows and rejecting the
/// non-commuting ones.
pub fn random_code(d: Prime, num_qudits: usize, seed: u64) -> Result<StabilizerCode, CodeError> {
    if num_qudits < 2 {
        return Err(CodeError::TooFewQudits(num_qudits));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let width = 2 * num_qudits;
    let mut kept = ZdMatrix::zeros(d, 0, width);
    while kept.rows() < num_qudits - 1 {
        // <row, v> = a.v_b - b.v_a, so the commutant is the null space of (-b | a).
        let constraints = ZdMatrix::from_fn(d, kept.rows(), width, |i, j| {
            if j < num_qudits {
                -(kept[(i, num_qudits + j)] as i64)
            } else {
                kept[(i, j - num_qudits)] as i64
            }
        });
        let basis = constraints.null_space();
        let mut candidate = vec![0u32; width];
        for v in &basis {
            let c = rng.random_range(0..d.get());
            for (x, &y) in candidate.iter_mut().zip(v) {
                *x = d.add(*x, d.mul(c, y));
            }
        }
        let row = ZdMatrix::from_fn(d, 1, width, |_, j| candidate[j] as i64);
        let grown = kept.vstack(&row)?;
        if grown.rank() == grown.rows() {
            kept = grown;
        }
    }
    StabilizerCode::new(kept, ZdVector::zeros(d, num_qudits - 1))
}

/// A uniformly random syndrome for `code`.
pub fn random_syndrome(code: &StabilizerCode, seed: u64) -> ZdVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = code.modulus();
    ZdVector::from_reduced(
        d,
        (0..code.num_stabilizers())
            .map(|_| rng.random_range(0..d.get()))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3() -> Prime {
        Prime::new(3).unwrap()
    }

    fn z_i() -> StabilizerCode {
        StabilizerCode::from_rows(p3(), &[[1, 0, 0, 0]]).unwrap()
    }

    fn z_z() -> StabilizerCode {
        StabilizerCode::from_rows(p3(), &[[1, 1, 0, 0]]).unwrap()
    }

    #[test]
    fn validate_examples() {
        assert_eq!(z_i().validate(), Ok(()));
        // N = 3 so that two rows fit the shape.
        let dup =
            StabilizerCode::from_rows(p3(), &[[1, 0, 0, 0, 0, 0], [2, 0, 0, 0, 0, 0]]).unwrap();
        assert_eq!(
            dup.validate(),
            Err(InvalidCode::RankDefect {
                rank: 1,
                expected: 2
            })
        );
        let zx =
            StabilizerCode::from_rows(p3(), &[[1, 0, 0, 0, 0, 0], [0, 0, 0, 1, 0, 0]]).unwrap();
        assert_eq!(zx.validate(), Err(InvalidCode::NonCommuting(0, 1)));
    }

    #[test]
    fn shape_errors() {
        let d = p3();
        assert!(matches!(
            StabilizerCode::new(ZdMatrix::zeros(d, 0, 2), ZdVector::zeros(d, 0)),
            Err(CodeError::TooFewQudits(1))
        ));
        assert!(matches!(
            StabilizerCode::new(ZdMatrix::zeros(d, 1, 3), ZdVector::zeros(d, 1)),
            Err(CodeError::Shape { .. })
        ));
        assert!(matches!(
            StabilizerCode::from_parts(d, 2, &[vec![0, 3, 0, 0]], &[0]),
            Err(CodeError::EntryOutOfRange { value: 3, d: 3 })
        ));
        assert!(matches!(
            StabilizerCode::from_parts(d, 1, &[], &[]),
            Err(CodeError::TooFewQudits(1))
        ));
    }

    #[test]
    fn canonical_trivial_code() {
        let c = z_i().canonicalize().unwrap();
        assert_eq!((c.n, c.m), (1, 0));
        assert_eq!(c.vec_a.as_slice(), &[0]);
        assert_eq!(c.b[(0, 0)], 0);
        assert_eq!(c.vec_b.as_slice(), &[0]);
        assert!(c.is_trivial());
        let l = c.logical_operators();
        assert_eq!((l.z.a(), l.z.b()), (&[0, 1][..], &[0, 0][..]));
        assert_eq!((l.x.a(), l.x.b()), (&[0, 0][..], &[0, 1][..]));
    }

    #[test]
    fn canonical_zz_code() {
        let c = z_z().canonicalize().unwrap();
        assert_eq!((c.n, c.m), (1, 0));
        assert_eq!(c.vec_a.as_slice(), &[1]);
        assert_eq!(c.b[(0, 0)], 0);
        assert_eq!(c.vec_b.as_slice(), &[0]);
        assert!(!c.is_trivial());
        assert!(c.to_code().generators().same_row_space(z_z().generators()));
        let l = c.logical_operators();
        assert_eq!((l.z.a(), l.z.b()), (&[0, 1][..], &[0, 0][..]));
        assert_eq!((l.x.a(), l.x.b()), (&[0, 0][..], &[2, 1][..]));
        assert!(l.check(&z_z()));
    }

    #[test]
    fn qudit_exchange_is_recorded() {
        // I (x) Z needs a swap to put the pivot first.
        let code = StabilizerCode::from_rows(p3(), &[[0, 1, 0, 0]]).unwrap();
        let c = code.canonicalize().unwrap();
        assert_eq!(c.column_permutation, vec![1, 0]);
        assert!(c.is_trivial());
        let l = c.logical_operators();
        // the passed-through qudit is qudit 0
        assert_eq!((l.z.a(), l.x.b()), (&[1, 0][..], &[1, 0][..]));
        assert!(l.check(&code));
    }

    #[test]
    fn x_type_rows_land_in_the_lower_block() {
        let d = Prime::new(5).unwrap();
        let code = StabilizerCode::from_rows(
            d,
            &[
                [0, 0, 0, 0, 1, 4, 0, 0],
                [0, 0, 0, 0, 0, 0, 1, 4],
                [1, 1, 1, 1, 0, 0, 0, 0],
            ],
        )
        .unwrap();
        code.validate().unwrap();
        let c = code.canonicalize().unwrap();
        assert_eq!((c.n, c.m), (1, 2));
        assert!(c.to_code().generators().same_row_space(code.generators()));
        assert!(c.logical_operators().check(&code));
    }

    #[test]
    fn syndrome_follows_row_operations() {
        // 2*(Z(x)Z) with eigenvalue w^1 is Z(x)Z with eigenvalue w^{1/2} = w^2 (d = 3).
        let code = StabilizerCode::from_rows(p3(), &[[2, 2, 0, 0]])
            .unwrap()
            .with_syndrome(ZdVector::new(p3(), [1]))
            .unwrap();
        let c = code.canonicalize().unwrap();
        assert_eq!(c.syndrome.as_slice(), &[2]);
    }

    #[test]
    fn random_codes_are_valid_and_deterministic() {
        for seed in 0..1000 {
            random_code(p3(), 3, seed).unwrap().validate().unwrap();
        }
        assert_eq!(
            random_code(p3(), 5, 42).unwrap(),
            random_code(p3(), 5, 42).unwrap()
        );
        assert!(random_code(p3(), 2, 0).unwrap().validate().is_ok());
        assert!(matches!(
            random_code(p3(), 1, 0),
            Err(CodeError::TooFewQudits(1))
        ));
    }

    #[test]
    fn trivial_product_codes() {
        for d in [3, 5, 7] {
            let d = Prime::new(d).unwrap();
            for nq in 2..=6 {
                let rows: Vec<Vec<i64>> = (0..nq - 1)
                    .map(|i| {
                        let mut r = vec![0; 2 * nq];
                        r[i] = 1;
                        r
                    })
                    .collect();
                let code = StabilizerCode::from_rows(d, &rows).unwrap();
                assert!(code.is_trivial().unwrap(), "d={d} N={nq}");
            }
        }
    }
}
