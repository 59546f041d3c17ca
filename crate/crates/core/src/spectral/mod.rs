//! Spherical functions, spherical and Helgason Fourier transforms,
//! Plancherel and inversion formulas, and Kunze–Stein checks.
//!
//! Convention: `φ_λ` is the radial eigenfunction of the one-step averaging
//! operator `M = I − L` with eigenvalue `γ(λ)`. This is the normalization
//! under which `H = F ∘ A` holds; its eigenvalue for `L` is `1 − γ(λ)`.

mod functions;
mod kunze_stein;
mod nonradial;
mod transforms;

pub use functions::{
    atom_gamma, atom_mass, c_func, c_inv_sq, gamma_at, gamma_of, phi_at, phi_lambda, phi_oracle,
    plancherel_density, spherical_phi, SpectralParam, SphericalTable,
};
pub use kunze_stein::{kunze_stein_check, phi0_decay, radial_lp_norm, KunzeSteinReport};
pub use nonradial::{helgason_plancherel, invert_helgason};
pub use transforms::{
    fourier_z, fourier_z_inv, helgason_transform, invert_spherical, plancherel_norm,
    radial_norm_sq, require_param, spherical_transform, spherical_transform_atom, SpectralReport,
};
