//! Sparse coefficient vectors `[(index, value)]`, sorted by index, no zeros.

use crate::field::PrimeField;

pub type SparseVec = Vec<(usize, u64)>;

pub fn unit(i: usize) -> SparseVec {
    vec![(i, 1)]
}

pub fn to_dense(v: &SparseVec, dim: usize) -> Vec<u64> {
    let mut out = vec![0; dim];
    for &(i, c) in v {
        out[i] = c;
    }
    out
}

pub fn from_dense(v: &[u64]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| (i, c))
        .collect()
}

pub fn scale(f: PrimeField, v: &SparseVec, c: u64) -> SparseVec {
    if c == 0 {
        return Vec::new();
    }
    v.iter().map(|&(i, x)| (i, f.mul(x, c))).collect()
}

pub fn neg(f: PrimeField, v: &SparseVec) -> SparseVec {
    v.iter().map(|&(i, x)| (i, f.neg(x))).collect()
}

/// `a + c*b`.
pub fn add_scaled(f: PrimeField, a: &SparseVec, b: &SparseVec, c: u64) -> SparseVec {
    if c == 0 || b.is_empty() {
        return a.clone();
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, f.mul(b[j].1, c)));
            j += 1;
        } else {
            let s = f.mul_add(a[i].1, b[j].1, c);
            if s != 0 {
                out.push((a[i].0, s));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn add(f: PrimeField, a: &SparseVec, b: &SparseVec) -> SparseVec {
    add_scaled(f, a, b, 1)
}

pub fn sub(f: PrimeField, a: &SparseVec, b: &SparseVec) -> SparseVec {
    add_scaled(f, a, b, f.neg(1))
}

/// Dense accumulator: `acc += c*v`.
pub fn axpy(f: PrimeField, acc: &mut [u64], c: u64, v: &SparseVec) {
    if c == 0 {
        return;
    }
    for &(i, x) in v {
        acc[i] = f.mul_add(acc[i], c, x);
    }
}

pub fn coefficient(v: &SparseVec, i: usize) -> u64 {
    v.binary_search_by_key(&i, |&(k, _)| k).map(|p| v[p].1).unwrap_or(0)
}
