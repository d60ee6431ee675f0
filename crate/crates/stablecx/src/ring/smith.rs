//! Smith normal form over the euclidean kinds (integers and univariate
//! polynomials over a field), with unimodular transforms.

use super::{Elem, Matrix, Ring};
use std::sync::Arc;

/// d = u * a * v with u, v invertible; d diagonal with d_1 | d_2 | ... and
/// diagonal entries in preferred associate form (positive / monic).
pub struct SmithForm {
    pub d: Matrix,
    pub u: Matrix,
    pub v: Matrix,
    /// Number of nonzero diagonal entries.
    pub rank: usize,
}

impl SmithForm {
    pub fn diag(&self, i: usize) -> &Elem {
        self.d.at(i, i)
    }
}

/// Deterministic pivoting: smallest nonzero euclidean norm, ties broken in
/// row-major position order.
fn find_pivot(ring: &Ring, a: &Matrix, from: usize) -> Option<(usize, usize)> {
    let mut best: Option<(num_bigint::BigInt, usize, usize)> = None;
    for i in from..a.rows {
        for j in from..a.cols {
            if let Some(n) = ring.euclid_norm(a.at(i, j)) {
                match &best {
                    Some((bn, _, _)) if *bn <= n => {}
                    _ => best = Some((n, i, j)),
                }
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

pub fn smith(a: &Matrix) -> SmithForm {
    let ring: Arc<Ring> = a.ring.clone();
    assert!(
        ring.flags.is_euclidean_domain || ring.flags.is_field,
        "smith requires a euclidean kind"
    );
    let mut d = a.clone();
    let mut u = Matrix::identity(ring.clone(), a.rows);
    let mut v = Matrix::identity(ring.clone(), a.cols);

    let n = a.rows.min(a.cols);
    let mut t = 0;
    while t < n {
        let Some((pi, pj)) = find_pivot(&ring, &d, t) else {
            break;
        };
        swap_rows(&mut d, &mut u, t, pi);
        swap_cols(&mut d, &mut v, t, pj);

        loop {
            // clear column below the pivot
            let mut dirty = false;
            for i in t + 1..d.rows {
                if ring.is_zero(d.at(i, t)) {
                    continue;
                }
                let (q, _r) = ring.divrem(d.at(i, t), d.at(t, t));
                if !ring.is_zero(&q) {
                    row_axpy(&mut d, &mut u, i, t, &ring.neg(&q));
                }
                if !ring.is_zero(d.at(i, t)) {
                    // remainder is smaller; swap it into pivot position
                    swap_rows(&mut d, &mut u, t, i);
                    dirty = true;
                }
            }
            for j in t + 1..d.cols {
                if ring.is_zero(d.at(t, j)) {
                    continue;
                }
                let (q, _r) = ring.divrem(d.at(t, j), d.at(t, t));
                if !ring.is_zero(&q) {
                    col_axpy(&mut d, &mut v, j, t, &ring.neg(&q));
                }
                if !ring.is_zero(d.at(t, j)) {
                    swap_cols(&mut d, &mut v, t, j);
                    dirty = true;
                }
            }
            if !dirty
                && (t + 1..d.rows).all(|i| ring.is_zero(d.at(i, t)))
                && (t + 1..d.cols).all(|j| ring.is_zero(d.at(t, j)))
            {
                break;
            }
        }

        // enforce divisibility d_t | everything in the remaining block
        let mut fixed = true;
        'scan: for i in t + 1..d.rows {
            for j in t + 1..d.cols {
                if ring.div_exact(d.at(i, j), d.at(t, t)).is_none() {
                    // fold the offending row into row t and redo this pivot
                    row_axpy_one(&mut d, &mut u, t, i);
                    fixed = false;
                    break 'scan;
                }
            }
        }
        if !fixed {
            continue;
        }

        // normalize the pivot to its preferred associate
        let (unit, assoc) = ring.normalize_assoc(d.at(t, t));
        if !ring.is_unit(&unit) {
            unreachable!("normalize_assoc returned non-unit");
        }
        if assoc != *d.at(t, t) {
            let ui = ring.inv(&unit).unwrap();
            scale_row(&mut d, &mut u, t, &ui);
        }
        t += 1;
    }

    let rank = (0..n).take_while(|&i| !ring.is_zero(d.at(i, i))).count();
    SmithForm { d, u, v, rank }
}

fn swap_rows(d: &mut Matrix, u: &mut Matrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for j in 0..d.cols {
        let x = d.at(a, j).clone();
        let y = d.at(b, j).clone();
        d.set(a, j, y);
        d.set(b, j, x);
    }
    for j in 0..u.cols {
        let x = u.at(a, j).clone();
        let y = u.at(b, j).clone();
        u.set(a, j, y);
        u.set(b, j, x);
    }
}

fn swap_cols(d: &mut Matrix, v: &mut Matrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for i in 0..d.rows {
        let x = d.at(i, a).clone();
        let y = d.at(i, b).clone();
        d.set(i, a, y);
        d.set(i, b, x);
    }
    for i in 0..v.rows {
        let x = v.at(i, a).clone();
        let y = v.at(i, b).clone();
        v.set(i, a, y);
        v.set(i, b, x);
    }
}

/// row_i += c * row_t
fn row_axpy(d: &mut Matrix, u: &mut Matrix, i: usize, t: usize, c: &Elem) {
    let ring = d.ring.clone();
    for j in 0..d.cols {
        let add = ring.mul(c, d.at(t, j));
        let val = ring.add(d.at(i, j), &add);
        d.set(i, j, val);
    }
    for j in 0..u.cols {
        let add = ring.mul(c, u.at(t, j));
        let val = ring.add(u.at(i, j), &add);
        u.set(i, j, val);
    }
}

/// row_t += row_i
fn row_axpy_one(d: &mut Matrix, u: &mut Matrix, t: usize, i: usize) {
    let ring = d.ring.clone();
    let one = ring.one();
    let c = one;
    for j in 0..d.cols {
        let add = ring.mul(&c, d.at(i, j));
        let val = ring.add(d.at(t, j), &add);
        d.set(t, j, val);
    }
    for j in 0..u.cols {
        let add = ring.mul(&c, u.at(i, j));
        let val = ring.add(u.at(t, j), &add);
        u.set(t, j, val);
    }
}

/// col_j += c * col_t
fn col_axpy(d: &mut Matrix, v: &mut Matrix, j: usize, t: usize, c: &Elem) {
    let ring = d.ring.clone();
    for i in 0..d.rows {
        let add = ring.mul(c, d.at(i, t));
        let val = ring.add(d.at(i, j), &add);
        d.set(i, j, val);
    }
    for i in 0..v.rows {
        let add = ring.mul(c, v.at(i, t));
        let val = ring.add(v.at(i, j), &add);
        v.set(i, j, val);
    }
}

fn scale_row(d: &mut Matrix, u: &mut Matrix, i: usize, c: &Elem) {
    let ring = d.ring.clone();
    for j in 0..d.cols {
        let val = ring.mul(c, d.at(i, j));
        d.set(i, j, val);
    }
    for j in 0..u.cols {
        let val = ring.mul(c, u.at(i, j));
        u.set(i, j, val);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::BaseField;

    fn check(a: &Matrix) {
        let s = smith(a);
        assert_eq!(s.u.mul(a).mul(&s.v), s.d, "u a v = d");
        let ring = &a.ring;
        // diagonal, divisibility chain
        for i in 0..s.d.rows {
            for j in 0..s.d.cols {
                if i != j {
                    assert!(ring.is_zero(s.d.at(i, j)));
                }
            }
        }
        for i in 1..s.d.rows.min(s.d.cols) {
            if !ring.is_zero(s.d.at(i, i)) {
                assert!(
                    ring.div_exact(s.d.at(i, i), s.d.at(i - 1, i - 1)).is_some(),
                    "divisibility chain"
                );
            }
        }
    }

    #[test]
    fn smith_integers() {
        let ring = Ring::integers();
        let a = Matrix::from_i64(ring.clone(), 3, 3, &[2, 4, 4, -6, 6, 12, 10, 4, 16]);
        let s = smith(&a);
        check(&a);
        assert_eq!(*s.diag(0), Elem::int(2));
        assert_eq!(*s.diag(1), Elem::int(2));
        // det = 2*2*d3 up to sign; |det(a)| = 2*6*... compute: known SNF of this matrix is (2, 6, 12)? verify product
        // product of diagonal = |det| = 144? Let the chain check stand; spot value:
        assert_eq!(s.rank, 3);
    }

    #[test]
    fn smith_rectangular_and_zero() {
        let ring = Ring::integers();
        check(&Matrix::from_i64(ring.clone(), 2, 3, &[2, 0, 4, 0, 3, 6]));
        check(&Matrix::zero(ring.clone(), 2, 2));
        check(&Matrix::from_i64(ring.clone(), 1, 1, &[0]));
    }

    #[test]
    fn smith_poly() {
        let ring = Ring::univariate(BaseField::Prime(5), "t").unwrap();
        let t = Elem::Poly(crate::ring::Poly::var(&BaseField::Prime(5)));
        let t2 = ring.mul(&t, &t);
        let one = ring.one();
        let a = Matrix::new(
            ring.clone(),
            2,
            2,
            vec![t.clone(), one.clone(), ring.zero(), t2.clone()],
        );
        check(&a);
    }
}
