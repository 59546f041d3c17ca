//! The shifted wave equation on the graph, its solvers and Ásgeirsson's
//! mean value property.

mod asgeirsson;
mod laplacian;
mod solver;

pub use asgeirsson::{
    asgeirsson_check, commutes_locally, double_sum_pointwise, PhiProduct, TabulatedU,
    TwoPointFunction, WaveLift,
};
pub use laplacian::{alpha, beta, lap_full, lap_horocyclic, lap_radial, lap_z, ZSeq};
pub(crate) use solver::wave_closed_with_leading;
pub use solver::{
    wave_closed, wave_closed_k_equal_r, wave_closed_k_less_r, wave_direct, wave_dual_abel,
    wave_solvers, CauchyData, ClosedSolver, DirectSolver, DualAbelSolver, WaveField, WaveSolver,
};
