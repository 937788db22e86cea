//! Rational solutions of `phi(Z) = B Z` (shift) or `delta(Z) = B Z`
//! (derivation) in normal coordinates.
//!
//! Each coordinate `z_i` of a solution satisfies the minimal scalar
//! equation taken at that coordinate, so it lies in the constant span of
//! that equation's rational solutions.  The equation also expresses
//! `phi^j(z_i)` as a row times `Z`.  Coordinates with the lowest orders are
//! solved until these rows determine `Z`; the system then fixes the
//! constant coefficients.

use crate::config::SolverConfig;
use crate::delta::DeltaMap;
use crate::error::{Error, Result};
use crate::linalg::{minimal_scalar_equation, MatrixF, ScalarEquation};
use crate::ratfunc::RatFunc;

use super::operator::{rational_solutions_scalar, solve_coefficient_system, ScalarOperator};

/// A basis over the constants of the rational solutions; its members are
/// also independent over `F`.
pub fn rational_solutions_matrix(
    b: &MatrixF,
    map: &DeltaMap,
    t: usize,
    cfg: &SolverConfig,
) -> Result<Vec<Vec<RatFunc>>> {
    let n = b.rows();
    let nv = b.nvars();
    let mut eqs: Vec<(usize, ScalarEquation)> = (0..n).map(|i| (i, minimal_scalar_equation(b, map, i))).collect();
    eqs.sort_by_key(|(i, e)| (e.order(), *i));
    // rows r with r.Z known, and the known values per unknown constant
    let mut rows: Vec<Vec<RatFunc>> = Vec::new();
    let mut values: Vec<Vec<RatFunc>> = Vec::new();
    let mut nunknowns = 0;
    for (_, eq) in &eqs {
        if !rows.is_empty() && MatrixF::from_rows(rows.clone(), nv).rank() == n {
            break;
        }
        let op = ScalarOperator::new(map.clone(), eq.coeffs.clone())?;
        let ws = rational_solutions_scalar(&op, t, cfg.max_degree, cfg.max_dispersion)?;
        let k = eq.order();
        for j in 0..k {
            rows.push(eq.rows[j].clone());
            values.push(vec![RatFunc::zero(nv); nunknowns]);
        }
        for w in ws {
            let first = rows.len() - k;
            let mut iterates = Vec::with_capacity(k);
            let mut pw = w;
            for _ in 0..k {
                let next = map.apply(&pw);
                iterates.push(pw);
                pw = next;
            }
            for (r, vals) in values.iter_mut().enumerate() {
                vals.push(if r >= first { iterates[r - first].clone() } else { RatFunc::zero(nv) });
            }
            nunknowns += 1;
        }
    }
    if nunknowns == 0 {
        return Ok(vec![]);
    }
    let r = MatrixF::from_rows(rows, nv);
    let vals = MatrixF::from_rows(values, nv);
    let sel = r.transpose().independent_columns();
    if sel.len() != n {
        return Err(Error::InternalInconsistency("scalar equations do not determine the solution".into()));
    }
    let rest: Vec<usize> = (0..r.rows()).filter(|i| !sel.contains(i)).collect();
    let inv = r.select_rows(&sel).inverse()?;
    let candidates = inv.mul(&vals.select_rows(&sel));
    let r_rest = r.select_rows(&rest);
    let v_rest = vals.select_rows(&rest);
    let residual = |z: &[RatFunc]| -> Vec<RatFunc> {
        let lhs = map.apply_vec(z);
        let rhs = b.mul_vec(z);
        lhs.iter().zip(&rhs).map(|(x, y)| x - y).collect()
    };
    let cols: Vec<Vec<RatFunc>> = (0..nunknowns)
        .map(|u| {
            let z = candidates.col(u);
            let mut c = residual(&z);
            let known = r_rest.mul_vec(&z);
            c.extend(known.iter().zip(v_rest.col(u)).map(|(x, y)| x - &y));
            c
        })
        .collect();
    let sys = solve_coefficient_system(&cols, None, t, nv);
    let mut out = Vec::with_capacity(sys.kernel.len());
    for v in sys.kernel {
        let mut z = vec![RatFunc::zero(nv); n];
        for (u, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (zi, ci) in z.iter_mut().zip(candidates.col(u)) {
                *zi = &*zi + &(c * &ci);
            }
        }
        if residual(&z).iter().any(|r| !r.is_zero()) {
            return Err(Error::InternalInconsistency("rational solution does not verify".into()));
        }
        out.push(z);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delta::MapKind;
    use crate::ratfunc::{q, Vars};

    #[test]
    fn small_systems() {
        let v = Vars::new(&["x", "y"]).unwrap();
        let cfg = SolverConfig::default();
        let d = DeltaMap::from_pairs("d", MapKind::Derivation, &v, &[("x", q(1))]).unwrap();
        let sols = rational_solutions_matrix(&MatrixF::zeros(2, 2, 2), &d, 0, &cfg).unwrap();
        assert_eq!(sols.len(), 2);
        let s = DeltaMap::from_pairs("s", MapKind::Shift, &v, &[("x", q(1))]).unwrap();
        let b = MatrixF::from_rows(vec![vec![v.parse("(x+1)/x").unwrap()]], 2);
        let sols = rational_solutions_matrix(&b, &s, 0, &cfg).unwrap();
        assert_eq!(sols, vec![vec![v.parse("x").unwrap()]]);
        // coupled: z1' = z2, z2' = 0 -> (1, 0), (x, 1)
        let b = MatrixF::from_rows(
            vec![vec![RatFunc::zero(2), RatFunc::one(2)], vec![RatFunc::zero(2), RatFunc::zero(2)]],
            2,
        );
        let sols = rational_solutions_matrix(&b, &d, 0, &cfg).unwrap();
        assert_eq!(sols.len(), 2);
    }
}
