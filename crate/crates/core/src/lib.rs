//! Exact dynamics of `S_b`, the map sending a positive integer to the sum of
//! the squares of its base-`b` digits.
//!
//! The iteration kernel is generic over [`Scalar`], so the same code runs on
//! machine words for brute-force scans and on [`Int`] when bases and values
//! outgrow them. Fibonacci and Pell families, which reach astronomically
//! large bases, are built directly on [`Int`] and [`IntPoly`].

pub mod dynamics;
pub mod error;
pub mod fibonacci;
pub mod fixed_points;
pub mod num;
pub mod pairs;
pub mod pell;
pub mod poly;
pub mod tables;

pub use dynamics::{
    enumerate_cycles, enumerate_fixed_points_bruteforce, orbit, orbit_within, preimages_below_two_b_squared,
    sum_square_digits, to_digits, Cycle, Digits, OrbitRecord, TwoDigit,
    MAX_ENUMERATION_BASE,
};
pub use error::{Error, Result};
pub use fibonacci::{
    arith_step_check, arith_step_residual, build_cycle, check_identity, fib,
    isolated_fib_fixed_point, type1_step, type2_step, CycleKind, FibCycleSpec, FibFixedPoint,
    FibIdentity, FixedVariant, Isolation,
};
pub use fixed_points::{
    companion_consecutive, companion_fib, companion_mn, companion_nu, companion_odd_base,
    companion_triangular, crt_least_solution, divisor_count, fixed_point_residual,
    fixed_points_structural, triangular, two_square_representations, CompanionPair,
    TriangularCompanion, TwoSquareRep,
};
pub use num::Scalar;
pub use pairs::{
    decompose, isolated_pair_fixed_points, pair_set, psi, psi_minus, psi_plus, verify_conjugacy,
    ConjugacyReport, IndexPair, IsolatedPair, OrbitDecomposition, Sign,
};
pub use pell::{
    check_pell_identity, pell, pell_arith_check, pell_arith_cycle, pell_cycle,
    pell_evaluate_cycle, pell_fixed_point, PellArithFamily, PellArithReport, PellCycle,
    PellDigitPair, PellFixedPoint, PellFixedVariant, PellIdentity,
};
pub use poly::Poly;
pub use tables::{compare as compare_table, regenerate as regenerate_table, TableId};

/// Arbitrary-precision integer used wherever values can grow without bound.
pub type Int = num_bigint::BigInt;
/// Polynomial in `x` with arbitrary-precision coefficients.
pub type IntPoly = Poly<Int>;
/// A two-digit numeral over [`Int`].
pub type IntDigit = TwoDigit<Int>;
pub type IntCycle = Cycle<Int>;
pub type IntOrbit = OrbitRecord<Int>;
/// Machine-word cycles for brute-force enumeration.
pub type SmallCycle = Cycle<u64>;
pub type SmallOrbit = OrbitRecord<u64>;
