/// Limits and choices shared by all solvers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolverConfig {
    /// Cap on the degree of polynomial ansatz parts.
    pub max_degree: usize,
    /// Cap on the dispersion used by shift universal denominators.
    pub max_dispersion: usize,
    /// Cap on the degree of the polynomial part of an exponential
    /// logarithmic derivative.
    pub max_exp_degree: usize,
    /// Coordinate used as the cyclic pivot of the ordinary solver.
    pub pivot: usize,
    /// Map processing order by name; input order when absent.
    pub order: Option<Vec<String>>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            max_degree: 30,
            max_dispersion: 100,
            max_exp_degree: 10,
            pivot: 0,
            order: None,
        }
    }
}
