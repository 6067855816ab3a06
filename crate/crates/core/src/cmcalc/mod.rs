//! State models for both families and the brute-force cyclic monotone
//! moment oracle.

mod model;
mod oracle;
mod state;

pub use model::{omega_a_eval, Spectrum, SpectrumModel, TraceClassModel, TraceWeight, Truncation};
pub use oracle::{
    cm_moment, collapse_interior_runs, collapse_internal_b_runs, conjugate_composite, poly_moment,
    CompositeFamily,
};
pub use state::{tau_eval, MatrixModel, MomentTable, MomentTableDoc, Tracial, TracialState};
