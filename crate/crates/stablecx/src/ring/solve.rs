//! Linear algebra over the roster: particular solutions and kernel generators,
//! dispatched per ring kind (Gaussian elimination over fields, Smith reduction
//! over euclidean kinds, base-field expansion over finite algebras, Groebner
//! syzygies over polynomial rings).

use super::smith::smith;
use super::{BaseField, Elem, FieldElem, Matrix, Ring, RingKind};
use crate::error::{Error, Result};
use std::sync::Arc;

/// Outcome of solve(A, b): a particular solution when b lies in the image of A
/// (all columns simultaneously), and columns generating the solution module of
/// A x = 0.
pub struct LinearSolution {
    pub particular: Option<Matrix>,
    pub kernel: Matrix,
}

pub fn solve(a: &Matrix, b: &Matrix) -> Result<LinearSolution> {
    if a.rows != b.rows {
        return Err(Error::arg(format!(
            "solve: A has {} rows but b has {}",
            a.rows, b.rows
        )));
    }
    Ok(LinearSolution {
        particular: solve_once(a, b),
        kernel: kernel_gens(a),
    })
}

/// Particular solution of A x = b for every column of b, or None.
pub fn solve_once(a: &Matrix, b: &Matrix) -> Option<Matrix> {
    assert_eq!(a.rows, b.rows, "solve shape mismatch");
    let ring = a.ring.clone();
    if a.cols == 0 {
        return if b.is_zero() {
            Some(Matrix::zero(ring, 0, b.cols))
        } else {
            None
        };
    }
    if a.rows == 0 {
        return Some(Matrix::zero(ring, a.cols, b.cols));
    }
    match &ring.kind {
        _ if ring.flags.is_field => field_solve(a, b),
        RingKind::Integers | RingKind::UnivariatePoly { .. } => euclid_solve(a, b),
        RingKind::QuotientAlgebra(_) => algebra_solve(a, b),
        RingKind::PolyRing { .. } => super::groebner::solve_poly(a, b),
        _ => unreachable!("roster kind not covered"),
    }
}

/// Columns generating {x : A x = 0}. Over euclidean kinds and fields the
/// output is a basis.
pub fn kernel_gens(a: &Matrix) -> Matrix {
    let ring = a.ring.clone();
    if a.cols == 0 {
        return Matrix::zero(ring, 0, 0);
    }
    if a.rows == 0 {
        return Matrix::identity(ring, a.cols);
    }
    match &ring.kind {
        _ if ring.flags.is_field => field_kernel(a),
        RingKind::Integers | RingKind::UnivariatePoly { .. } => {
            let s = smith(a);
            let idx: Vec<usize> = (s.rank..a.cols).collect();
            s.v.select_columns(&idx)
        }
        RingKind::QuotientAlgebra(_) => algebra_kernel(a),
        RingKind::PolyRing { .. } => super::groebner::kernel_gens_poly(a),
        _ => unreachable!("roster kind not covered"),
    }
}

/// Does every column of b lie in the column module of a?
pub fn contains_columns(a: &Matrix, b: &Matrix) -> bool {
    solve_once(a, b).is_some()
}

// ---- fields -----------------------------------------------------------------

struct Echelon {
    /// Reduced matrix [A | B] after row reduction.
    m: Matrix,
    /// pivot column per pivot row (all < a_cols).
    pivots: Vec<usize>,
    a_cols: usize,
}

fn echelon(a: &Matrix, b: Option<&Matrix>) -> Echelon {
    let ring = a.ring.clone();
    let mut m = match b {
        Some(b) => a.hcat(b),
        None => a.clone(),
    };
    let mut pivots = vec![];
    let mut row = 0;
    for col in 0..a.cols {
        let Some(pr) = (row..m.rows).find(|&r| !ring.is_zero(m.at(r, col))) else {
            continue;
        };
        if pr != row {
            for j in 0..m.cols {
                let x = m.at(row, j).clone();
                let y = m.at(pr, j).clone();
                m.set(row, j, y);
                m.set(pr, j, x);
            }
        }
        let inv = ring.inv(m.at(row, col)).expect("field pivot invertible");
        for j in 0..m.cols {
            let v = ring.mul(&inv, m.at(row, j));
            m.set(row, j, v);
        }
        for r in 0..m.rows {
            if r != row && !ring.is_zero(m.at(r, col)) {
                let f = m.at(r, col).clone();
                for j in 0..m.cols {
                    let t = ring.mul(&f, m.at(row, j));
                    let v = ring.sub(m.at(r, j), &t);
                    m.set(r, j, v);
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.rows {
            break;
        }
    }
    Echelon { m, pivots, a_cols: a.cols }
}

fn field_solve(a: &Matrix, b: &Matrix) -> Option<Matrix> {
    let ring = a.ring.clone();
    let e = echelon(a, Some(b));
    // consistency: rows past the pivot rows must have zero b-part
    for r in e.pivots.len()..e.m.rows {
        for j in e.a_cols..e.m.cols {
            if !ring.is_zero(e.m.at(r, j)) {
                return None;
            }
        }
    }
    let mut x = Matrix::zero(ring, a.cols, b.cols);
    for (pr, &pc) in e.pivots.iter().enumerate() {
        for j in 0..b.cols {
            x.set(pc, j, e.m.at(pr, e.a_cols + j).clone());
        }
    }
    Some(x)
}

fn field_kernel(a: &Matrix) -> Matrix {
    let ring = a.ring.clone();
    let e = echelon(a, None);
    let free: Vec<usize> = (0..a.cols).filter(|c| !e.pivots.contains(c)).collect();
    let mut k = Matrix::zero(ring.clone(), a.cols, free.len());
    for (j, &fc) in free.iter().enumerate() {
        *k.at_mut(fc, j) = ring.one();
        for (pr, &pc) in e.pivots.iter().enumerate() {
            *k.at_mut(pc, j) = ring.neg(e.m.at(pr, fc));
        }
    }
    k
}

// ---- euclidean domains --------------------------------------------------------

fn euclid_solve(a: &Matrix, b: &Matrix) -> Option<Matrix> {
    let ring = a.ring.clone();
    let s = smith(a);
    let ub = s.u.mul(b);
    let n = a.rows.min(a.cols);
    let mut y = Matrix::zero(ring.clone(), a.cols, b.cols);
    for j in 0..b.cols {
        for i in 0..a.rows {
            let rhs = ub.at(i, j);
            if i < n && !ring.is_zero(s.diag(i)) {
                let q = ring.div_exact(rhs, s.diag(i))?;
                y.set(i, j, q);
            } else if !ring.is_zero(rhs) {
                return None;
            }
        }
    }
    Some(s.v.mul(&y))
}

// ---- finite-dimensional algebras ----------------------------------------------

fn base_ring(base: &BaseField) -> Arc<Ring> {
    match base {
        BaseField::Prime(p) => Ring::prime_field(*p).expect("validated prime"),
        BaseField::Rationals => Ring::rationals(),
    }
}

fn fe_to_elem(fe: &FieldElem) -> Elem {
    match fe {
        FieldElem::Fp(x) => Elem::Fp(*x),
        FieldElem::Rat(r) => Elem::Rat(r.clone()),
    }
}

fn elem_to_fe(e: &Elem) -> FieldElem {
    match e {
        Elem::Fp(x) => FieldElem::Fp(*x),
        Elem::Rat(r) => FieldElem::Rat(r.clone()),
        _ => panic!("expected base field element"),
    }
}

fn quot_coeffs(e: &Elem) -> &Vec<FieldElem> {
    match e {
        Elem::Quot(v) => v,
        _ => panic!("expected algebra element"),
    }
}

/// Expand a matrix over a finite algebra to the base field, block (i,j) being
/// the multiplication matrix of entry (i,j).
fn algebra_expand(a: &Matrix) -> Matrix {
    let d = a.ring.algebra().unwrap();
    let m = d.dim();
    let br = base_ring(&d.base);
    Matrix::from_fn(br.clone(), a.rows * m, a.cols * m, |i, j| {
        let (ia, ib) = (i / m, i % m);
        let (ja, jb) = (j / m, j % m);
        let mm = d.mult_matrix(quot_coeffs(a.at(ia, ja)));
        fe_to_elem(&mm[ib][jb])
    })
}

fn algebra_vec_expand(b: &Matrix) -> Matrix {
    let d = b.ring.algebra().unwrap();
    let m = d.dim();
    let br = base_ring(&d.base);
    Matrix::from_fn(br, b.rows * m, b.cols, |i, j| {
        let (ia, ib) = (i / m, i % m);
        fe_to_elem(&quot_coeffs(b.at(ia, j))[ib])
    })
}

fn algebra_vec_collapse(ring: &Arc<Ring>, v: &Matrix, rows: usize) -> Matrix {
    let d = ring.algebra().unwrap();
    let m = d.dim();
    Matrix::from_fn(ring.clone(), rows, v.cols, |i, j| {
        let coeffs: Vec<FieldElem> = (0..m).map(|t| elem_to_fe(v.at(i * m + t, j))).collect();
        Elem::Quot(coeffs)
    })
}

fn algebra_solve(a: &Matrix, b: &Matrix) -> Option<Matrix> {
    let big = algebra_expand(a);
    let rhs = algebra_vec_expand(b);
    let sol = field_solve(&big, &rhs)?;
    Some(algebra_vec_collapse(&a.ring, &sol, a.cols))
}

fn algebra_kernel(a: &Matrix) -> Matrix {
    let big = algebra_expand(a);
    let k = field_kernel(&big);
    algebra_vec_collapse(&a.ring, &k, a.cols)
}

/// Generalized-inverse test: coker(A) is projective iff A X A = A is solvable.
pub fn has_generalized_inverse(a: &Matrix) -> bool {
    if a.rows == 0 || a.cols == 0 || a.is_zero() {
        return true;
    }
    // vec(A X A) = (A^T (x) A) vec(X)
    let coeff = a.transpose().kronecker(a);
    solve_once(&coeff, &a.vec()).is_some()
}
