//! Dense matrices over GF(2^L) with row-space semantics.
//!
//! Rank, span membership and the greedy basis routines used to split each
//! receiver's demand space into "known by me", "known by the other receiver"
//! and "nobody knows" parts. Selection is always lowest row index first so
//! that everything built on top is reproducible.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{Field, Gf, GfVector};

/// Row-major matrix over a fixed field. `0 x k` and `k x 0` are valid.
#[derive(Clone, PartialEq, Eq)]
pub struct GfMatrix {
    field: &'static Field,
    rows: usize,
    cols: usize,
    data: Vec<Gf>,
}

impl fmt::Debug for GfMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "GfMatrix {}x{} over GF(2^{}) [", self.rows, self.cols, self.field.degree())?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        write!(f, "]")
    }
}

impl GfMatrix {
    pub fn zeros(field: &'static Field, rows: usize, cols: usize) -> Self {
        GfMatrix {
            field,
            rows,
            cols,
            data: vec![Gf::ZERO; rows * cols],
        }
    }

    pub fn identity(field: &'static Field, n: usize) -> Self {
        let mut m = GfMatrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = Gf::ONE;
        }
        m
    }

    /// Builds a matrix from explicit rows, each of length `cols`.
    pub fn from_rows(field: &'static Field, cols: usize, rows: &[GfVector]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::Dimension {
                    expected: cols,
                    found: row.len(),
                });
            }
            if let Some(bad) = row.iter().find(|x| !field.contains(**x)) {
                return Err(Error::ElementRange {
                    value: bad.0 as u32,
                    degree: field.degree(),
                });
            }
            data.extend_from_slice(row);
        }
        Ok(GfMatrix {
            field,
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Convenience constructor from raw integer rows.
    pub fn from_u32_rows(field: &'static Field, cols: usize, rows: &[Vec<u32>]) -> Result<Self> {
        let rows: Vec<GfVector> = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.element(v)).collect::<Result<_>>())
            .collect::<Result<_>>()?;
        GfMatrix::from_rows(field, cols, &rows)
    }

    pub fn field(&self) -> &'static Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Gf] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> impl Iterator<Item = &[Gf]> + '_ {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn get(&self, r: usize, c: usize) -> Gf {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Gf) {
        debug_assert!(self.field.contains(v));
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> GfMatrix {
        let mut t = GfMatrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    /// Stacks matrices vertically. All parts must share field and column count.
    pub fn vstack(parts: &[&GfMatrix]) -> Result<GfMatrix> {
        let first = parts
            .first()
            .ok_or_else(|| Error::Domain("cannot stack an empty list of matrices".into()))?;
        let mut out = GfMatrix::zeros(first.field, 0, first.cols);
        for p in parts {
            if p.field != first.field {
                return Err(Error::FieldMismatch);
            }
            if p.cols != first.cols {
                return Err(Error::Dimension {
                    expected: first.cols,
                    found: p.cols,
                });
            }
            out.data.extend_from_slice(&p.data);
            out.rows += p.rows;
        }
        Ok(out)
    }

    /// Block-diagonal matrix with `copies` copies of `self`.
    pub fn block_diagonal(&self, copies: usize) -> GfMatrix {
        let mut out = GfMatrix::zeros(self.field, self.rows * copies, self.cols * copies);
        for c in 0..copies {
            for r in 0..self.rows {
                let dst = (c * self.rows + r) * out.cols + c * self.cols;
                out.data[dst..dst + self.cols].copy_from_slice(self.row(r));
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        rank(self)
    }

    pub fn in_span(&self, v: &[Gf]) -> Result<bool> {
        in_span(v, self)
    }
}

/// Incrementally maintained echelon basis of a row space.
///
/// Each stored row has a pivot entry equal to one and is zero at the pivots
/// of every row inserted before it, so reducing a vector against the rows in
/// insertion order clears all pivot columns.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    field: &'static Field,
    dim: usize,
    rows: Vec<GfVector>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn new(field: &'static Field, dim: usize) -> Self {
        EchelonBasis {
            field,
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    fn check_len(&self, v: &[Gf]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::Dimension {
                expected: self.dim,
                found: v.len(),
            });
        }
        Ok(())
    }

    fn reduce_in_place(&self, v: &mut [Gf]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p];
            if !c.is_zero() {
                self.field.axpy(v, c, row);
            }
        }
    }

    /// Residual of `v` after elimination against the basis.
    pub fn reduce(&self, v: &[Gf]) -> Result<GfVector> {
        self.check_len(v)?;
        let mut w = v.to_vec();
        self.reduce_in_place(&mut w);
        Ok(w)
    }

    pub fn contains(&self, v: &[Gf]) -> Result<bool> {
        Ok(self.reduce(v)?.iter().all(|x| x.is_zero()))
    }

    /// Adds `v` to the basis if it is independent. Returns whether it was added.
    pub fn insert(&mut self, v: &[Gf]) -> Result<bool> {
        let mut w = self.reduce(v)?;
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return Ok(false);
        };
        let inv = self.field.inv(w[p]).expect("pivot is nonzero");
        self.field.scale(&mut w, inv);
        self.rows.push(w);
        self.pivots.push(p);
        Ok(true)
    }

    /// Whether the unit vector `e_index` lies in the span.
    pub fn contains_unit(&self, index: usize) -> bool {
        let mut e = vec![Gf::ZERO; self.dim];
        e[index] = Gf::ONE;
        self.reduce_in_place(&mut e);
        e.iter().all(|x| x.is_zero())
    }
}

/// Dimension of the row span.
pub fn rank(m: &GfMatrix) -> usize {
    let mut basis = EchelonBasis::new(m.field, m.cols);
    for r in m.row_vectors() {
        basis.insert(r).expect("row length equals column count");
        if basis.is_full() {
            break;
        }
    }
    basis.rank()
}

/// Whether `v` is in the row space of `m`.
pub fn in_span(v: &[Gf], m: &GfMatrix) -> Result<bool> {
    if v.len() != m.cols {
        return Err(Error::Dimension {
            expected: m.cols,
            found: v.len(),
        });
    }
    let mut basis = EchelonBasis::new(m.field, m.cols);
    for r in m.row_vectors() {
        basis.insert(r)?;
    }
    basis.contains(v)
}

/// Result of greedily extending an independent set with candidate rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisExtension {
    pub base: Vec<GfVector>,
    pub added: Vec<GfVector>,
    /// Row indices (into the candidate matrix) of `added`.
    pub added_rows: Vec<usize>,
    pub space_dim: usize,
}

fn basis_of(field: &'static Field, dim: usize, current: &[GfVector]) -> Result<EchelonBasis> {
    let mut basis = EchelonBasis::new(field, dim);
    for v in current {
        if !basis.insert(v)? {
            return Err(Error::precondition(
                "the current vectors are linearly dependent",
            ));
        }
    }
    Ok(basis)
}

/// Selects, in row order, the rows of `candidates` that are independent of
/// `current` and of the rows already selected.
pub fn extend_basis(current: &[GfVector], candidates: &GfMatrix) -> Result<BasisExtension> {
    let mut basis = basis_of(candidates.field, candidates.cols, current)?;
    let mut added = Vec::new();
    let mut added_rows = Vec::new();
    for (i, r) in candidates.row_vectors().enumerate() {
        if basis.is_full() {
            break;
        }
        if basis.insert(r)? {
            added.push(r.to_vec());
            added_rows.push(i);
        }
    }
    Ok(BasisExtension {
        base: current.to_vec(),
        added,
        added_rows,
        space_dim: candidates.cols,
    })
}

/// Unit vectors `e_0, e_1, ...` (in index order) completing `current` to a
/// basis of the full `dim`-dimensional space.
pub fn complete_to_full_space(
    field: &'static Field,
    current: &[GfVector],
    dim: usize,
) -> Result<Vec<GfVector>> {
    if current.len() > dim {
        return Err(Error::precondition(format!(
            "{} vectors cannot be independent in a space of dimension {dim}",
            current.len()
        )));
    }
    let mut basis = basis_of(field, dim, current)?;
    let mut out = Vec::with_capacity(dim - current.len());
    for i in 0..dim {
        if basis.is_full() {
            break;
        }
        let mut e = vec![Gf::ZERO; dim];
        e[i] = Gf::ONE;
        if basis.insert(&e)? {
            out.push(e);
        }
    }
    Ok(out)
}
