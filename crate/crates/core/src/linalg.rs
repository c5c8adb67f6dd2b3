//! Exact linear algebra over the rationals by sparse row reduction.
//!
//! Only what the degreewise quotient computations need: an incremental row
//! reducer that keeps an echelon basis and reports ranks. Rows are stored as
//! primitive integer vectors (content one, positive lead) with sorted
//! supports; reductions are fraction-free cross-multiplications followed by
//! content stripping, which keeps entries small on the Macaulay-style
//! matrices this crate produces.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A sparse rational vector: strictly increasing column indices.
pub type SparseVec = Vec<(usize, BigRational)>;

type IntRow = Vec<(usize, BigInt)>;

/// out = a*v - b*row, merging sorted supports.
fn combine(a: &BigInt, v: &IntRow, b: &BigInt, row: &IntRow) -> IntRow {
    let mut out = Vec::with_capacity(v.len() + row.len());
    let mut i = 0;
    let mut j = 0;
    while i < v.len() || j < row.len() {
        if j >= row.len() || (i < v.len() && v[i].0 < row[j].0) {
            out.push((v[i].0, a * &v[i].1));
            i += 1;
        } else if i >= v.len() || row[j].0 < v[i].0 {
            out.push((row[j].0, -(b * &row[j].1)));
            j += 1;
        } else {
            let c = a * &v[i].1 - b * &row[j].1;
            if !c.is_zero() {
                out.push((v[i].0, c));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Divide by the gcd of the entries and make the pivot (last) positive.
fn make_primitive(mut v: IntRow) -> IntRow {
    let mut g = BigInt::zero();
    for (_, c) in &v {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    if g.is_zero() {
        return v;
    }
    if v.last().map(|(_, c)| c.is_negative()).unwrap_or(false) {
        g = -g;
    }
    if !g.is_one() {
        for (_, c) in v.iter_mut() {
            *c = &*c / &g;
        }
    }
    v
}

fn to_int_row(v: SparseVec) -> IntRow {
    let mut lcm = BigInt::one();
    for (_, c) in &v {
        lcm = lcm.lcm(c.denom());
    }
    let row: IntRow = v
        .into_iter()
        .map(|(i, c)| (i, c.numer() * (&lcm / c.denom())))
        .collect();
    make_primitive(row)
}

/// Incrementally row-reduced subspace of Q^n.
///
/// The pivot of a row is its largest column. With columns listed in an
/// ascending monomial order this eliminates on leading monomials, which is
/// what keeps Macaulay-style matrices sparse during reduction.
pub struct RowSpace {
    ncols: usize,
    /// Echelon rows keyed by pivot column.
    rows: alloc::collections::BTreeMap<usize, IntRow>,
}

impl RowSpace {
    pub fn new(ncols: usize) -> Self {
        RowSpace {
            ncols,
            rows: alloc::collections::BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    fn reduce(&self, mut v: IntRow) -> IntRow {
        loop {
            match v.last() {
                None => return v,
                Some((pivot, coeff)) => match self.rows.get(pivot) {
                    None => return v,
                    Some(row) => {
                        let a = row.last().unwrap().1.clone();
                        let b = coeff.clone();
                        v = make_primitive(combine(&a, &v, &b, row));
                    }
                },
            }
        }
    }

    /// Reduces `v` against the basis; returns true when the vector enlarged
    /// the span (and was added to the basis).
    pub fn insert_sparse(&mut self, v: SparseVec) -> bool {
        debug_assert!(v.iter().all(|(c, x)| *c < self.ncols && !x.is_zero()));
        let v = self.reduce(to_int_row(v));
        match v.last() {
            None => false,
            Some((pivot, _)) => {
                let pivot = *pivot;
                self.rows.insert(pivot, v);
                true
            }
        }
    }

    /// Dense-vector convenience wrapper.
    pub fn insert(&mut self, v: Vec<BigRational>) -> bool {
        assert_eq!(v.len(), self.ncols);
        let sparse: SparseVec = v
            .into_iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .collect();
        self.insert_sparse(sparse)
    }

    /// Inserts an integer row (sorted support, nonzero entries).
    pub fn insert_int(&mut self, v: Vec<(usize, BigInt)>) -> bool {
        let v = self.reduce(make_primitive(v));
        match v.last() {
            None => false,
            Some((pivot, _)) => {
                let pivot = *pivot;
                self.rows.insert(pivot, v);
                true
            }
        }
    }

    /// The echelon rows as integer rows (sorted support).
    pub fn int_rows(&self) -> impl Iterator<Item = &Vec<(usize, BigInt)>> {
        self.rows.values()
    }

    /// True when `v` already lies in the span.
    pub fn contains_sparse(&self, v: SparseVec) -> bool {
        self.reduce(to_int_row(v)).is_empty()
    }

    pub fn contains(&self, v: Vec<BigRational>) -> bool {
        assert_eq!(v.len(), self.ncols);
        let sparse: SparseVec = v
            .into_iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .collect();
        self.contains_sparse(sparse)
    }
}

/// Rank of a list of dense vectors.
pub fn rank(vectors: impl IntoIterator<Item = Vec<BigRational>>, ncols: usize) -> usize {
    let mut space = RowSpace::new(ncols);
    for v in vectors {
        space.insert(v);
        if space.is_full() {
            break;
        }
    }
    space.rank()
}
