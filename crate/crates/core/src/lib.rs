//! Exact discrete barrier transform for nearest-neighbor Markov chains
//! on `Z^d`.
//!
//! Given a chain that moves one lattice step at a time, the transform maps a
//! payoff `f` supported above the hyperplane `{x_d = 0}` to a payoff `Nf`
//! supported below it, such that `E[f(Z_t^x)] = E[Nf(Z_t^x)]` for every time
//! `t` and every start `x` on the hyperplane. A down-and-out claim paying
//! `f(Z_T)` is then replicated by holding `f - Nf` statically.
//!
//! All arithmetic is exact ([`rational::Rational`]). The modules build on one
//! another:
//!
//! - [`kernel`]: step probabilities and their validation.
//! - [`lattice`]: the support sets indexing every system.
//! - [`distribution`]: exact laws, with and without killing at the boundary.
//! - [`transform`]: the triangular systems, `N`, and its explicit coefficients.
//! - [`verify`]: exact checks of every identity, and a Monte Carlo hedge.
//! - [`oracle`]: brute-force references used by the tests.
//!
//! ```
//! use cn_lattice::prelude::*;
//!
//! let kernel = StepKernel::one_dimensional(ratio(2, 3), ratio(1, 3)).unwrap();
//! let f = LatticeFunction::indicator(Site::new([1])).unwrap();
//! assert_eq!(transform_at(&kernel, &Site::new([-1]), &f).unwrap(), int(2));
//! ```

pub mod distribution;
pub mod error;
pub mod kernel;
pub mod lattice;
pub mod oracle;
pub mod permutation;
pub mod rational;
pub mod transform;
pub mod verify;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::distribution::{evolve, evolve_killed, expect, KilledEvolution, Measure};
    pub use crate::error::{Error, Result};
    pub use crate::kernel::{
        is_reflection_symmetric, validate_kernel, Direction, KernelSpec, Site, StepKernel,
    };
    pub use crate::lattice::{is_member, order_index, support_set, SupportPoint, SupportSet};
    pub use crate::rational::{int, parse_rational, ratio, Rational};
    pub use crate::transform::{
        build_system, coefficients_via_solve, cramer_coefficients, determinant, local_transform,
        transform_at, CoefficientTable, LatticeFunction, Region, Sign, Transformer,
        TriangularSystem,
    };
    pub use crate::verify::{
        barrier_parity, check_consistency, check_reflection, check_theorem, check_uniqueness,
        mc_hedge, run_suite, Suite, VerificationReport, Verifier,
    };
}

/// The guide's chapters, compiled as doctests so their snippets stay current.
#[cfg(doctest)]
pub mod guide {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub struct Introduction;
    #[doc = include_str!("../../../book/src/kernels.md")]
    pub struct Kernels;
    #[doc = include_str!("../../../book/src/support.md")]
    pub struct Support;
    #[doc = include_str!("../../../book/src/distributions.md")]
    pub struct Distributions;
    #[doc = include_str!("../../../book/src/transform.md")]
    pub struct Transform;
    #[doc = include_str!("../../../book/src/coefficients.md")]
    pub struct Coefficients;
    #[doc = include_str!("../../../book/src/verification.md")]
    pub struct Verification;
    #[doc = include_str!("../../../book/src/monte_carlo.md")]
    pub struct MonteCarlo;
    #[doc = include_str!("../../../book/src/cli.md")]
    pub struct Cli;
}
