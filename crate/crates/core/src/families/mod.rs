//! Elliptic fibrations over the affine line: twist families, the Fermat
//! cubic pencil and user-declared Weierstrass pencils.

pub mod fiber;
pub mod spec;
pub mod stream;
pub mod validate;

pub use fiber::{
    cubic_witness, euler_parametrize, fiber_at, specialize_sections, twist_witness, Fiber,
    TotalSpacePoint,
};
pub use spec::{Family, FamilySpec};
pub use stream::{witness_stream, Mode, StreamStats, WitnessStream};
pub use validate::{is_valid, validate_family, Finding, Severity};
