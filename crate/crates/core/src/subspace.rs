//! Subspaces of the ambient space `F_q^N` in canonical (reduced row echelon)
//! form, with sum, intersection, the subspace metric
//! `d(U, V) = dim(U + V) - dim(U ∩ V)`, orthogonal complements, uniform
//! sampling, and Grassmannian enumeration.

use std::fmt;

use rand::Rng;

use crate::error::{CodeError, Result};
use crate::field::{int_inv_mod, is_prime};

/// Default cap on `q^{l(N-l)}` for exhaustive Grassmannian enumeration.
pub const DEFAULT_ENUM_CAP: u128 = 1_000_000;

/// A length-`N` row vector over `F_q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VectorFq {
    q: u32,
    entries: Vec<u32>,
}

impl VectorFq {
    pub fn new(q: u32, entries: Vec<u32>) -> Result<Self> {
        if !is_prime(q) {
            return Err(CodeError::InvalidParameter(format!("q = {q} is not prime")));
        }
        if entries.iter().any(|&e| e >= q) {
            return Err(CodeError::InvalidParameter(
                "vector entries must lie in [0, q)".into(),
            ));
        }
        Ok(VectorFq { q, entries })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }
}

/// A subspace of `F_q^N`, stored as its RREF basis with no zero rows.
/// Two subspaces are equal iff their RREF matrices are identical.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    q: u32,
    ambient_dim: usize,
    basis: Vec<Vec<u32>>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subspace(q={}, N={}, dim={}, basis={:?})",
            self.q,
            self.ambient_dim,
            self.dim(),
            self.basis
        )
    }
}

impl Subspace {
    /// The zero subspace `{0}` of `F_q^N`.
    pub fn zero(q: u32, ambient_dim: usize) -> Result<Self> {
        if !is_prime(q) {
            return Err(CodeError::InvalidParameter(format!("q = {q} is not prime")));
        }
        Ok(Subspace {
            q,
            ambient_dim,
            basis: Vec::new(),
        })
    }

    /// The full space `F_q^N`.
    pub fn full(q: u32, ambient_dim: usize) -> Result<Self> {
        let mut basis = Vec::with_capacity(ambient_dim);
        for i in 0..ambient_dim {
            let mut row = vec![0u32; ambient_dim];
            row[i] = 1;
            basis.push(row);
        }
        if !is_prime(q) {
            return Err(CodeError::InvalidParameter(format!("q = {q} is not prime")));
        }
        Ok(Subspace {
            q,
            ambient_dim,
            basis,
        })
    }

    /// The row space of the given generators, canonicalized. The empty list
    /// yields `{0}`. Invariant under row permutation, nonzero scaling, and
    /// row addition.
    pub fn from_generators(q: u32, ambient_dim: usize, rows: &[VectorFq]) -> Result<Self> {
        let mut raw = Vec::with_capacity(rows.len());
        for v in rows {
            if v.q != q {
                return Err(CodeError::AmbientMismatch(format!(
                    "generator over F_{} in F_{} space",
                    v.q, q
                )));
            }
            if v.len() != ambient_dim {
                return Err(CodeError::AmbientMismatch(format!(
                    "generator of length {} in ambient dimension {}",
                    v.len(),
                    ambient_dim
                )));
            }
            raw.push(v.entries.clone());
        }
        Self::from_rows(q, ambient_dim, raw)
    }

    pub(crate) fn from_rows(q: u32, ambient_dim: usize, mut rows: Vec<Vec<u32>>) -> Result<Self> {
        if !is_prime(q) {
            return Err(CodeError::InvalidParameter(format!("q = {q} is not prime")));
        }
        debug_assert!(rows.iter().all(|r| r.len() == ambient_dim));
        let rank = rref_in_place(&mut rows, q);
        rows.truncate(rank);
        Ok(Subspace {
            q,
            ambient_dim,
            basis: rows,
        })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// The RREF basis rows.
    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<VectorFq> {
        self.basis
            .iter()
            .map(|r| VectorFq {
                q: self.q,
                entries: r.clone(),
            })
            .collect()
    }

    fn ensure_same_ambient(&self, other: &Subspace) -> Result<()> {
        if self.q != other.q || self.ambient_dim != other.ambient_dim {
            return Err(CodeError::AmbientMismatch(format!(
                "F_{}^{} vs F_{}^{}",
                self.q, self.ambient_dim, other.q, other.ambient_dim
            )));
        }
        Ok(())
    }

    /// Membership test by reduction against the RREF basis.
    pub fn contains(&self, v: &VectorFq) -> Result<bool> {
        if v.q != self.q || v.len() != self.ambient_dim {
            return Err(CodeError::AmbientMismatch(format!(
                "vector of length {} over F_{} in F_{}^{}",
                v.len(),
                v.q,
                self.q,
                self.ambient_dim
            )));
        }
        let q = self.q;
        let mut w = v.entries.clone();
        for row in &self.basis {
            let p = row.iter().position(|&c| c != 0).expect("RREF row has pivot");
            let c = w[p];
            if c != 0 {
                for (wi, &ri) in w.iter_mut().zip(row) {
                    *wi = (*wi + (q - c) * ri) % q;
                }
            }
        }
        Ok(w.iter().all(|&c| c == 0))
    }

    /// All `q^dim` vectors of the subspace.
    pub fn vectors(&self) -> Vec<VectorFq> {
        let q = self.q;
        let r = self.dim();
        let total = (q as u64).checked_pow(r as u32).expect("subspace too large to list");
        let mut out = Vec::with_capacity(total as usize);
        for idx in 0..total {
            let mut v = vec![0u32; self.ambient_dim];
            let mut rest = idx;
            for row in &self.basis {
                let c = (rest % q as u64) as u32;
                rest /= q as u64;
                if c != 0 {
                    for (vi, &ri) in v.iter_mut().zip(row) {
                        *vi = (*vi + c * ri % q) % q;
                    }
                }
            }
            out.push(VectorFq { q, entries: v });
        }
        out
    }

    /// Smallest subspace containing both operands.
    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.ensure_same_ambient(other)?;
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Subspace::from_rows(self.q, self.ambient_dim, rows)
    }

    /// Intersection via the Zassenhaus stacked-matrix method: one echelon
    /// reduction of the block matrix [[U, U], [V, 0]].
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.ensure_same_ambient(other)?;
        let n = self.ambient_dim;
        let mut block: Vec<Vec<u32>> = Vec::with_capacity(self.dim() + other.dim());
        for row in &self.basis {
            let mut wide = Vec::with_capacity(2 * n);
            wide.extend_from_slice(row);
            wide.extend_from_slice(row);
            block.push(wide);
        }
        for row in &other.basis {
            let mut wide = Vec::with_capacity(2 * n);
            wide.extend_from_slice(row);
            wide.extend(std::iter::repeat_n(0, n));
            block.push(wide);
        }
        let rank = rref_in_place(&mut block, self.q);
        let mut inter_rows = Vec::new();
        for row in block.iter().take(rank) {
            if row[..n].iter().all(|&c| c == 0) {
                inter_rows.push(row[n..].to_vec());
            }
        }
        Subspace::from_rows(self.q, n, inter_rows)
    }

    /// The subspace metric `d(U, V) = dim(U + V) - dim(U ∩ V)`, computed as
    /// `2 dim(U + V) - dim U - dim V`.
    pub fn distance(&self, other: &Subspace) -> Result<usize> {
        self.ensure_same_ambient(other)?;
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        let sum_dim = rref_in_place(&mut rows, self.q);
        Ok(2 * sum_dim - self.dim() - other.dim())
    }

    /// `U^⊥` with respect to the standard inner product; dim = N - dim U.
    pub fn orthogonal_complement(&self) -> Subspace {
        let n = self.ambient_dim;
        let q = self.q;
        let pivots: Vec<usize> = self
            .basis
            .iter()
            .map(|row| row.iter().position(|&c| c != 0).expect("no zero rows"))
            .collect();
        let mut rows = Vec::with_capacity(n - self.dim());
        for j in 0..n {
            if pivots.contains(&j) {
                continue;
            }
            let mut v = vec![0u32; n];
            v[j] = 1;
            for (row, &p) in self.basis.iter().zip(&pivots) {
                v[p] = (q - row[j]) % q;
            }
            rows.push(v);
        }
        Subspace::from_rows(q, n, rows).expect("q already validated")
    }

    /// Text format: first line `q N r`, then `r` lines of `N` digits.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.q, self.ambient_dim, self.dim());
        for row in &self.basis {
            let line: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parses the text format produced by [`Subspace::to_text`]; the basis is
    /// canonicalized, so canonical input round-trips bit-exactly.
    pub fn parse_text(text: &str) -> Result<Subspace> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or(CodeError::Parse {
            line: 1,
            message: "empty subspace file".into(),
        })?;
        let head: Vec<&str> = header.split_whitespace().collect();
        if head.len() != 3 {
            return Err(CodeError::Parse {
                line: 1,
                message: format!("expected header `q N r`, got {head:?}"),
            });
        }
        let parse_num = |s: &str, line: usize| -> Result<usize> {
            s.parse().map_err(|_| CodeError::Parse {
                line,
                message: format!("invalid integer `{s}`"),
            })
        };
        let q = parse_num(head[0], 1)? as u32;
        let n = parse_num(head[1], 1)?;
        let r = parse_num(head[2], 1)?;
        let mut rows = Vec::with_capacity(r);
        for _ in 0..r {
            let (idx, line) = lines.next().ok_or(CodeError::Parse {
                line: r + 1,
                message: format!("expected {r} basis rows"),
            })?;
            let lineno = idx + 1;
            let mut row = Vec::with_capacity(n);
            for tok in line.split_whitespace() {
                let e = parse_num(tok, lineno)? as u32;
                if e >= q {
                    return Err(CodeError::Parse {
                        line: lineno,
                        message: format!("entry {e} not in [0, {q})"),
                    });
                }
                row.push(e);
            }
            if row.len() != n {
                return Err(CodeError::Parse {
                    line: lineno,
                    message: format!("expected {n} entries, got {}", row.len()),
                });
            }
            rows.push(row);
        }
        for (idx, line) in lines {
            if !line.trim().is_empty() {
                return Err(CodeError::Parse {
                    line: idx + 1,
                    message: "trailing content after basis rows".into(),
                });
            }
        }
        let s = Subspace::from_rows(q, n, rows)?;
        if s.dim() != r {
            return Err(CodeError::Parse {
                line: 1,
                message: format!("declared rank {r} but basis has rank {}", s.dim()),
            });
        }
        Ok(s)
    }
}

/// Reduces `rows` to reduced row echelon form in place and returns the rank.
/// Rows beyond the rank are zeroed (callers truncate).
pub(crate) fn rref_in_place(rows: &mut [Vec<u32>], q: u32) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let n = rows[0].len();
    let mut rank = 0;
    for col in 0..n {
        let Some(pivot) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = int_inv_mod(rows[rank][col], q);
        if inv != 1 {
            for c in rows[rank].iter_mut() {
                *c = (*c as u64 * inv as u64 % q as u64) as u32;
            }
        }
        let pivot_row = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == rank {
                continue;
            }
            let factor = row[col];
            if factor == 0 {
                continue;
            }
            for (d, &s) in row.iter_mut().zip(pivot_row.iter()) {
                *d = ((*d as u64 + (q - factor) as u64 * s as u64) % q as u64) as u32;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

pub(crate) fn rank_of(rows: &[Vec<u32>], q: u32) -> usize {
    let mut copy = rows.to_vec();
    rref_in_place(&mut copy, q)
}

/// A uniformly distributed `k`-dimensional subspace of `F_q^N`, by rejection
/// sampling of k x N matrices until full rank. Every subspace has the same
/// number of rank-k generator matrices, so the result is exactly uniform.
pub fn random_subspace(q: u32, n: usize, k: usize, rng: &mut impl Rng) -> Result<Subspace> {
    if k > n {
        return Err(CodeError::InvalidParameter(format!(
            "requested dimension {k} exceeds ambient dimension {n}"
        )));
    }
    if !is_prime(q) {
        return Err(CodeError::InvalidParameter(format!("q = {q} is not prime")));
    }
    if k == 0 {
        return Subspace::zero(q, n);
    }
    loop {
        let rows: Vec<Vec<u32>> = (0..k)
            .map(|_| (0..n).map(|_| rng.gen_range(0..q)).collect())
            .collect();
        if rank_of(&rows, q) == k {
            return Subspace::from_rows(q, n, rows);
        }
    }
}

/// All `l`-dimensional subspaces of `F_q^N`, each exactly once, in canonical
/// form. Order: lexicographic over pivot-column sets, then an odometer over
/// the free entries. Errors when `q^{l(N-l)}` exceeds `cap`.
pub fn enumerate_grassmannian(q: u32, n: usize, l: usize, cap: u128) -> Result<Vec<Subspace>> {
    if l > n {
        return Err(CodeError::InvalidParameter(format!(
            "subspace dimension {l} exceeds ambient dimension {n}"
        )));
    }
    if !is_prime(q) {
        return Err(CodeError::InvalidParameter(format!("q = {q} is not prime")));
    }
    let free_cells_bound = l * (n - l);
    let mut states: u128 = 1;
    for _ in 0..free_cells_bound {
        states = states.saturating_mul(q as u128);
        if states > cap {
            return Err(CodeError::EnumerationCapExceeded {
                required: states,
                cap,
            });
        }
    }

    let mut out = Vec::new();
    if l == 0 {
        out.push(Subspace::zero(q, n)?);
        return Ok(out);
    }

    // Iterate pivot-column combinations in lexicographic order.
    let mut pivots: Vec<usize> = (0..l).collect();
    loop {
        // Free cells: (row i, col j) with j > pivots[i] and j not a pivot.
        let mut free_cells = Vec::new();
        for (i, &p) in pivots.iter().enumerate() {
            for j in (p + 1)..n {
                if !pivots.contains(&j) {
                    free_cells.push((i, j));
                }
            }
        }
        let mut values = vec![0u32; free_cells.len()];
        loop {
            let mut basis = vec![vec![0u32; n]; l];
            for (i, &p) in pivots.iter().enumerate() {
                basis[i][p] = 1;
            }
            for (&(i, j), &v) in free_cells.iter().zip(&values) {
                basis[i][j] = v;
            }
            out.push(Subspace {
                q,
                ambient_dim: n,
                basis,
            });
            // Odometer: last free cell varies fastest.
            let mut idx = free_cells.len();
            loop {
                if idx == 0 {
                    break;
                }
                idx -= 1;
                values[idx] += 1;
                if values[idx] < q {
                    break;
                }
                values[idx] = 0;
                if idx == 0 {
                    idx = usize::MAX;
                    break;
                }
            }
            if idx == usize::MAX || free_cells.is_empty() {
                break;
            }
        }
        // Next combination in lexicographic order.
        let mut i = l;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if pivots[i] < n - (l - i) {
                pivots[i] += 1;
                for j in i + 1..l {
                    pivots[j] = pivots[j - 1] + 1;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn vq(q: u32, entries: &[u32]) -> VectorFq {
        VectorFq::new(q, entries.to_vec()).unwrap()
    }

    #[test]
    fn from_generators_basics() {
        let s = Subspace::from_generators(2, 3, &[]).unwrap();
        assert_eq!(s.dim(), 0);
        assert!(s.is_zero());

        // Third row is the sum of the first two: dimension 2.
        let rows = [vq(2, &[1, 1, 0]), vq(2, &[0, 1, 1]), vq(2, &[1, 0, 1])];
        let s = Subspace::from_generators(2, 3, &rows).unwrap();
        assert_eq!(s.dim(), 2);

        let bad = Subspace::from_generators(2, 4, &rows);
        assert!(matches!(bad, Err(CodeError::AmbientMismatch(_))));
    }

    #[test]
    fn canonical_form_invariant_under_row_operations() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..100 {
            let q = if rng.gen_bool(0.5) { 2 } else { 3 };
            let n = rng.gen_range(2..6);
            let k = rng.gen_range(1..=n);
            let s = random_subspace(q, n, k, &mut rng).unwrap();
            // Generate shuffled, scaled, summed variants of the basis.
            let mut rows = s.basis().to_vec();
            for _ in 0..10 {
                match rng.gen_range(0..3) {
                    0 => {
                        let i = rng.gen_range(0..rows.len());
                        let j = rng.gen_range(0..rows.len());
                        rows.swap(i, j);
                    }
                    1 => {
                        let i = rng.gen_range(0..rows.len());
                        let c = rng.gen_range(1..q);
                        for e in rows[i].iter_mut() {
                            *e = (*e * c) % q;
                        }
                    }
                    _ => {
                        let i = rng.gen_range(0..rows.len());
                        let j = rng.gen_range(0..rows.len());
                        if i != j {
                            let src = rows[j].clone();
                            for (e, &sv) in rows[i].iter_mut().zip(&src) {
                                *e = (*e + sv) % q;
                            }
                        }
                    }
                }
            }
            let s2 = Subspace::from_rows(q, n, rows).unwrap();
            assert_eq!(s, s2);
        }
    }

    #[test]
    fn sum_and_intersection_basics() {
        let zero = Subspace::zero(2, 2).unwrap();
        let e1 = Subspace::from_generators(2, 2, &[vq(2, &[1, 0])]).unwrap();
        let e2 = Subspace::from_generators(2, 2, &[vq(2, &[0, 1])]).unwrap();
        assert_eq!(e1.sum(&zero).unwrap(), e1);
        assert_eq!(e1.sum(&e1).unwrap(), e1);
        // Two distinct lines span the plane.
        assert_eq!(e1.sum(&e2).unwrap(), Subspace::full(2, 2).unwrap());
        assert_eq!(e1.intersect(&e1).unwrap(), e1);
        assert!(e1.intersect(&zero).unwrap().is_zero());
        assert!(e1.intersect(&e2).unwrap().is_zero());
    }

    #[test]
    fn intersection_membership_and_dimension_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..200 {
            let ku = rng.gen_range(0..=4);
            let kv = rng.gen_range(0..=4);
            let u = random_subspace(2, 6, ku, &mut rng).unwrap();
            let v = random_subspace(2, 6, kv, &mut rng).unwrap();
            let inter = u.intersect(&v).unwrap();
            let sum = u.sum(&v).unwrap();
            assert_eq!(
                sum.dim() + inter.dim(),
                u.dim() + v.dim(),
                "dimension identity"
            );
            for w in inter.vectors() {
                assert!(u.contains(&w).unwrap());
                assert!(v.contains(&w).unwrap());
            }
        }
    }

    #[test]
    fn distance_examples_and_metric_axioms() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        let e1 = Subspace::from_generators(2, 2, &[vq(2, &[1, 0])]).unwrap();
        let e2 = Subspace::from_generators(2, 2, &[vq(2, &[0, 1])]).unwrap();
        assert_eq!(e1.distance(&e2).unwrap(), 2);
        for _ in 0..1000 {
            let a = random_subspace(2, 6, rng.gen_range(0..=6), &mut rng).unwrap();
            let b = random_subspace(2, 6, rng.gen_range(0..=6), &mut rng).unwrap();
            let x = random_subspace(2, 6, rng.gen_range(0..=6), &mut rng).unwrap();
            let dab = a.distance(&b).unwrap();
            assert_eq!(dab, b.distance(&a).unwrap());
            assert_eq!(dab == 0, a == b);
            assert_eq!(a.distance(&a).unwrap(), 0);
            assert_eq!(a.distance(&Subspace::zero(2, 6).unwrap()).unwrap(), a.dim());
            let dax = a.distance(&x).unwrap();
            let dxb = x.distance(&b).unwrap();
            assert!(dab <= dax + dxb, "triangle inequality violated");
        }
    }

    #[test]
    fn orthogonal_complement_properties() {
        let mut rng = ChaCha8Rng::seed_from_u64(44);
        let zero = Subspace::zero(2, 4).unwrap();
        assert_eq!(zero.orthogonal_complement(), Subspace::full(2, 4).unwrap());
        for _ in 0..300 {
            let u = random_subspace(2, 6, rng.gen_range(0..=6), &mut rng).unwrap();
            let v = random_subspace(2, 6, rng.gen_range(0..=6), &mut rng).unwrap();
            let up = u.orthogonal_complement();
            assert_eq!(up.dim(), 6 - u.dim());
            assert_eq!(up.orthogonal_complement(), u, "involution");
            assert_eq!(
                u.distance(&v).unwrap(),
                up.distance(&v.orthogonal_complement()).unwrap(),
                "complement preserves distance"
            );
            // (U + V)^⊥ = U^⊥ ∩ V^⊥ and (U ∩ V)^⊥ = U^⊥ + V^⊥.
            let vp = v.orthogonal_complement();
            assert_eq!(
                u.sum(&v).unwrap().orthogonal_complement(),
                up.intersect(&vp).unwrap()
            );
            assert_eq!(
                u.intersect(&v).unwrap().orthogonal_complement(),
                up.sum(&vp).unwrap()
            );
        }
    }

    #[test]
    fn complement_orthogonality_over_f3() {
        let mut rng = ChaCha8Rng::seed_from_u64(45);
        for _ in 0..50 {
            let u = random_subspace(3, 5, rng.gen_range(0..=5), &mut rng).unwrap();
            let up = u.orthogonal_complement();
            for x in u.vectors() {
                for y in up.vectors() {
                    let dot: u32 = x
                        .entries()
                        .iter()
                        .zip(y.entries())
                        .map(|(&a, &b)| a * b % 3)
                        .sum::<u32>()
                        % 3;
                    assert_eq!(dot, 0);
                }
            }
        }
    }

    #[test]
    fn random_subspace_edge_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(46);
        let z = random_subspace(2, 4, 0, &mut rng).unwrap();
        assert!(z.is_zero());
        let f = random_subspace(2, 4, 4, &mut rng).unwrap();
        assert_eq!(f, Subspace::full(2, 4).unwrap());
        assert!(random_subspace(2, 4, 5, &mut rng).is_err());
    }

    #[test]
    fn random_subspace_uniform_chi_squared() {
        // 35 two-dimensional subspaces of F_2^4; 10^5 draws.
        let all = enumerate_grassmannian(2, 4, 2, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(all.len(), 35);
        let mut counts = std::collections::HashMap::new();
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        let draws = 100_000usize;
        for _ in 0..draws {
            let s = random_subspace(2, 4, 2, &mut rng).unwrap();
            *counts.entry(s).or_insert(0usize) += 1;
        }
        assert_eq!(counts.len(), 35);
        let expected = draws as f64 / 35.0;
        let chi2: f64 = counts
            .values()
            .map(|&c| {
                let d = c as f64 - expected;
                d * d / expected
            })
            .sum();
        // 0.999 quantile of chi-squared with 34 degrees of freedom.
        assert!(chi2 < 65.25, "chi2 = {chi2}");
    }

    #[test]
    fn enumerate_grassmannian_counts() {
        assert_eq!(enumerate_grassmannian(2, 2, 1, 1 << 20).unwrap().len(), 3);
        assert_eq!(enumerate_grassmannian(2, 4, 2, 1 << 20).unwrap().len(), 35);
        let zero_case = enumerate_grassmannian(3, 4, 0, 1 << 20).unwrap();
        assert_eq!(zero_case.len(), 1);
        assert!(zero_case[0].is_zero());
        // All distinct and canonical; matches a brute-force build.
        let all = enumerate_grassmannian(2, 4, 2, 1 << 20).unwrap();
        let set: std::collections::HashSet<_> = all.iter().cloned().collect();
        assert_eq!(set.len(), 35);
        let mut brute = std::collections::HashSet::new();
        for mask in 0..(1u32 << 8) {
            let rows = vec![
                vec![mask & 1, (mask >> 1) & 1, (mask >> 2) & 1, (mask >> 3) & 1],
                vec![
                    (mask >> 4) & 1,
                    (mask >> 5) & 1,
                    (mask >> 6) & 1,
                    (mask >> 7) & 1,
                ],
            ];
            let s = Subspace::from_rows(2, 4, rows).unwrap();
            if s.dim() == 2 {
                brute.insert(s);
            }
        }
        assert_eq!(brute, set);
    }

    #[test]
    fn enumeration_order_is_pinned() {
        // Lexicographic pivot sets, then the free-entry odometer: the order
        // is part of the output contract (golden files depend on it).
        let lines: Vec<String> = enumerate_grassmannian(2, 3, 1, 1 << 20)
            .unwrap()
            .iter()
            .map(|s| s.basis()[0].iter().map(|c| c.to_string()).collect::<String>())
            .collect();
        assert_eq!(lines, ["100", "101", "110", "111", "010", "011", "001"]);
    }

    #[test]
    fn enumeration_cap_enforced() {
        let err = enumerate_grassmannian(2, 30, 15, 1_000_000).unwrap_err();
        assert!(matches!(err, CodeError::EnumerationCapExceeded { .. }));
    }

    #[test]
    fn text_format_examples() {
        let s = Subspace::from_generators(2, 3, &[vq(2, &[1, 1, 0]), vq(2, &[0, 1, 1])]).unwrap();
        let text = s.to_text();
        assert_eq!(text, "2 3 2\n1 0 1\n0 1 1\n");
        assert_eq!(Subspace::parse_text(&text).unwrap(), s);

        let err = Subspace::parse_text("2 3 2\n1 0 1\n").unwrap_err();
        assert!(matches!(err, CodeError::Parse { .. }));
        let err = Subspace::parse_text("2 3 1\n1 0 7\n").unwrap_err();
        assert!(matches!(err, CodeError::Parse { line: 2, .. }));
    }

    proptest! {
        #[test]
        fn text_round_trip_is_bit_exact(seed in 0u64..500) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let q = *[2u32, 3, 5].get(rng.gen_range(0..3)).unwrap();
            let n = rng.gen_range(1..6usize);
            let k = rng.gen_range(0..=n);
            let s = random_subspace(q, n, k, &mut rng).unwrap();
            let text = s.to_text();
            let back = Subspace::parse_text(&text).unwrap();
            prop_assert_eq!(&back, &s);
            prop_assert_eq!(back.to_text(), text);
        }

        #[test]
        fn generators_give_containing_space(seed in 0u64..200) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = rng.gen_range(1..6usize);
            let rows: Vec<VectorFq> = (0..rng.gen_range(0..4usize))
                .map(|_| VectorFq::new(3, (0..n).map(|_| rng.gen_range(0..3)).collect()).unwrap())
                .collect();
            let s = Subspace::from_generators(3, n, &rows).unwrap();
            for row in &rows {
                prop_assert!(s.contains(row).unwrap());
            }
            prop_assert!(s.dim() <= rows.len());
        }
    }
}
