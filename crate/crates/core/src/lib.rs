//! Exact contact cuts of `T²`-invariant contact forms on `T² × [0, 1]`.
//!
//! Angles are arguments of primitive integer vectors plus whole turns, so
//! every topological decision (monotonicity, zeros of moment maps, component
//! counts, lens slopes) is made in integer arithmetic. Floats appear only in
//! reported approximations and dense sampling.
//!
//! ```
//! use contact_cuts::{cc_count, classify_lens, standard, Direction, LensKind};
//!
//! let spec = standard::alpha_k_spec(3).unwrap();
//! assert_eq!(cc_count(&spec, Direction::new(-1, 1).unwrap()), 3);
//! assert_eq!(classify_lens(&spec).kind, LensKind::Sphere3);
//! ```

pub mod angle;
pub mod classify;
pub mod combination;
pub mod cut;
pub mod form;
pub mod report;
pub mod specfile;
pub mod standard;
pub mod symplectization;

pub type Rational = num_rational::Ratio<i64>;

pub use angle::{angle_compare, count_lattice, direction_angle, lattice_points, Angle, AngleError, Direction};
pub use classify::{
    cc_count, cc_profile, detect_overtwisted, distinguish, homotopy_certificate, overtwisted_disks, CcProfile,
    DistinguishMode, DistinguishWitness, HomotopyCertificate, HomotopyError, OvertwistedCertificate,
};
pub use combination::LinearAngle;
pub use cut::{
    classify_lens, contact_reduce, slice_by_ray, validate_cutspec, CutError, CutSpec, End, LensDescriptor, LensKind,
    ReducedCircle, Violation,
};
pub use form::{
    contact_check, AngleProfile, FormError, InvariantContactForm, MomentValue, Orientation, RadialProfile, Sign,
};
pub use report::{reproduce_paper, Format, Record, Report};
pub use specfile::{parse_spec, read_spec, Diagnostic, ParsedInput};
pub use symplectization::{check_cut_symplectization_commute, sympl_moment_eval, CommuteReport, SymplectizedMoment};
