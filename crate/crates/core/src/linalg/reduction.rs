//! Cyclic-vector style scalar equations and elimination of algebraic
//! relations from first-order systems.

use crate::delta::DeltaMap;
use crate::error::Result;
use crate::linalg::MatrixF;
use crate::ratfunc::RatFunc;

/// `phi^k(z) + a_{k-1} phi^{k-1}(z) + ... + a_0 z = 0` for the pivot
/// coordinate `z` of every solution, together with the rows `r_j` such
/// that `phi^j(z) = r_j . Z`.
#[derive(Clone, Debug)]
pub struct ScalarEquation {
    /// `a_0, ..., a_{k-1}, 1`
    pub coeffs: Vec<RatFunc>,
    /// `r_0, ..., r_k`
    pub rows: Vec<Vec<RatFunc>>,
}

impl ScalarEquation {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }
}

/// Next row: `phi(r) B` for shifts, `phi(r) + r B` for derivations.
fn next_row(r: &[RatFunc], b: &MatrixF, map: &DeltaMap) -> Vec<RatFunc> {
    let pr = map.apply_vec(r);
    if map.is_shift() {
        b.vec_mul(&pr)
    } else {
        let rb = b.vec_mul(r);
        pr.iter().zip(&rb).map(|(x, y)| x + y).collect()
    }
}

pub fn minimal_scalar_equation(b: &MatrixF, map: &DeltaMap, pivot: usize) -> ScalarEquation {
    let n = b.rows();
    let nv = b.nvars();
    assert!(pivot < n, "pivot out of range");
    let mut r0 = vec![RatFunc::zero(nv); n];
    r0[pivot] = RatFunc::one(nv);
    let mut rows = vec![r0];
    loop {
        let next = next_row(rows.last().unwrap(), b, map);
        let basis = MatrixF::from_rows(rows.clone(), nv).transpose();
        let target = MatrixF::column_vector(&next, nv).scale_q(&-crate::ratfunc::q(1));
        if let Some(a) = basis.solve(&target) {
            let mut coeffs = a.col(0);
            coeffs.push(RatFunc::one(nv));
            rows.push(next);
            return ScalarEquation { coeffs, rows };
        }
        rows.push(next);
    }
}

/// Solutions of the input are exactly `Y = S Y'` with `phi(Y') = P Y'`.
/// The columns of `S` with a unit row mark the kept coordinates `kept`;
/// the remaining coordinates are linear in them.
#[derive(Clone, Debug)]
pub struct LinearReduction {
    pub s: MatrixF,
    pub p: MatrixF,
    pub kept: Vec<usize>,
}

impl LinearReduction {
    /// The only solution is zero.
    pub fn is_empty(&self) -> bool {
        self.s.cols() == 0
    }
}

/// Reduce `V phi(Y) = U Y` (with `V` of full column rank) to pure
/// dynamics on a subvector.
pub fn linear_reduction(v: &MatrixF, u: &MatrixF, map: &DeltaMap) -> Result<LinearReduction> {
    let nv = v.nvars();
    let n = v.cols();
    let mut s = MatrixF::identity(n, nv);
    let mut kept: Vec<usize> = (0..n).collect();
    let mut v = v.clone();
    let mut u = u.clone();
    loop {
        let k = v.cols();
        if k == 0 {
            return Ok(LinearReduction {
                s,
                p: MatrixF::zeros(0, 0, nv),
                kept: vec![],
            });
        }
        let m = v.rows();
        let aug = v.hstack(&MatrixF::identity(m, nv));
        let rr = aug.rref();
        debug_assert!(rr.pivots.iter().take(k).enumerate().all(|(i, &p)| p == i));
        let tcols: Vec<usize> = (k..k + m).collect();
        let t = rr.matrix.select_cols(&tcols);
        let tu = t.mul(&u);
        let top: Vec<usize> = (0..k).collect();
        let bottom: Vec<usize> = (k..m).collect();
        let p = tu.select_rows(&top);
        let nmat = tu.select_rows(&bottom);
        if nmat.rows() == 0 || nmat.is_zero() {
            return Ok(LinearReduction { s, p, kept });
        }
        let nr = nmat.rref();
        let free: Vec<usize> = (0..k).filter(|j| !nr.pivots.contains(j)).collect();
        let kmat = nmat.nullspace_matrix();
        kept = free.iter().map(|&j| kept[j]).collect();
        s = s.mul(&kmat);
        if kmat.cols() == 0 {
            return Ok(LinearReduction {
                s,
                p: MatrixF::zeros(0, 0, nv),
                kept: vec![],
            });
        }
        let pk = p.mul(&kmat);
        if map.is_shift() {
            v = map.apply_matrix(&kmat);
            u = pk;
        } else {
            u = pk.sub(&map.apply_matrix(&kmat));
            v = kmat;
        }
    }
}

/// Reduce `phi(Y) = B Y` (shift) or `delta(Y) = B Y` (derivation) under
/// the extra constraint that the coordinates in `zero` vanish.
pub fn reduce_with_zeros(b: &MatrixF, map: &DeltaMap, zero: &[usize]) -> Result<LinearReduction> {
    let n = b.rows();
    let nv = b.nvars();
    let keep: Vec<usize> = (0..n).filter(|i| !zero.contains(i)).collect();
    let e = MatrixF::identity(n, nv).select_cols(&keep);
    let be = b.mul(&e);
    let red = linear_reduction(&e, &be, map)?;
    let kept = red.kept.iter().map(|&j| keep[j]).collect();
    Ok(LinearReduction {
        s: e.mul(&red.s),
        p: red.p,
        kept,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delta::MapKind;
    use crate::ratfunc::{q, Vars};

    #[test]
    fn nilpotent_derivation() {
        let v = Vars::new(&["x"]).unwrap();
        let d = DeltaMap::from_pairs("d", MapKind::Derivation, &v, &[("x", q(1))]).unwrap();
        let b = MatrixF::from_rows(
            vec![
                vec![RatFunc::zero(1), RatFunc::one(1)],
                vec![RatFunc::zero(1), RatFunc::zero(1)],
            ],
            1,
        );
        let eq = minimal_scalar_equation(&b, &d, 0);
        assert_eq!(eq.order(), 2);
        assert!(eq.coeffs[0].is_zero() && eq.coeffs[1].is_zero());
    }

    #[test]
    fn scalar_case() {
        let v = Vars::new(&["x"]).unwrap();
        let s = DeltaMap::from_pairs("s", MapKind::Shift, &v, &[("x", q(1))]).unwrap();
        let b = MatrixF::from_rows(vec![vec![v.parse("x+1").unwrap()]], 1);
        let eq = minimal_scalar_equation(&b, &s, 0);
        assert_eq!(eq.order(), 1);
        assert_eq!(eq.coeffs[0], v.parse("-x-1").unwrap());
    }

    #[test]
    fn identity_v_keeps_everything() {
        let v = Vars::new(&["x"]).unwrap();
        let s = DeltaMap::from_pairs("s", MapKind::Shift, &v, &[("x", q(1))]).unwrap();
        let u = MatrixF::from_rows(
            vec![
                vec![v.parse("x").unwrap(), RatFunc::one(1)],
                vec![RatFunc::zero(1), RatFunc::int(1, 2)],
            ],
            1,
        );
        let red = linear_reduction(&MatrixF::identity(2, 1), &u, &s).unwrap();
        assert_eq!(red.p, u);
        assert!(red.s.is_identity());
    }
}
