//! Scalar solvers: rational, hypergeometric and exponential solutions of
//! scalar operators, rational solutions of first-order matrix systems, and
//! the additive and multiplicative first-order systems over several maps.

pub mod additive;
pub mod expsol;
pub mod hyper;
pub mod multiplicative;
pub mod operator;
pub mod ratsol;

pub use additive::rational_additive_solve;
pub use expsol::exponential_solutions;
pub use hyper::hypergeometric_solutions;
pub use multiplicative::rational_multiplicative_solve;
pub use operator::ScalarOperator;
pub use ratsol::rational_solutions_matrix;

use crate::config::SolverConfig;
use crate::error::Result;
use crate::ratfunc::RatFunc;

/// Hyperexponential solutions `h w` of a scalar operator sharing the
/// certificate `cert = phi(h)/h` (shift) or `delta(h)/h` (derivation), with
/// `w` ranging over the constant span of `multipliers`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionClass {
    pub cert: RatFunc,
    pub multipliers: Vec<RatFunc>,
}

/// Keep one certificate per associate class, preferring earlier ones, and
/// attach the rational solutions of the twisted operator to each.
pub(crate) fn classes_from_candidates(
    op: &ScalarOperator,
    t: usize,
    candidates: Vec<RatFunc>,
    cfg: &SolverConfig,
) -> Result<Vec<SolutionClass>> {
    let nv = op.nvars();
    let mut kept: Vec<RatFunc> = Vec::new();
    for c in candidates {
        let mut fresh = true;
        for k in &kept {
            let ratio = op.map.quotient(&c, k)?;
            if rational_multiplicative_solve(nv, &[(op.map.clone(), ratio)])?.is_some() {
                fresh = false;
                break;
            }
        }
        if fresh {
            kept.push(c);
        }
    }
    let mut out = Vec::with_capacity(kept.len());
    for cert in kept {
        let tw = op.twist(&cert);
        let multipliers = operator::rational_solutions_scalar(&tw, t, cfg.max_degree, cfg.max_dispersion)?;
        if !multipliers.is_empty() {
            out.push(SolutionClass { cert, multipliers });
        }
    }
    Ok(out)
}
