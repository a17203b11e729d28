//! Aschbacher-class checkers and the audit report built from them.

mod checks;
mod evidence;
mod report;
mod scan;
mod tensor;

pub use checks::*;
pub use evidence::{ClassTag, Evidence, ExclusionVerdict, Inequality, Relation, Witness};
pub use report::{
    revalidate, revalidate_json, revalidate_text, run_full_audit, AuditReport, Conclusion, GroupRecord, PointRecord,
    Revalidation, TripleRecord,
};
pub use scan::{run_scan, ScanLine, ScanSummary};
pub use tensor::{closed_form_profile_count, tensor_search, TensorProfile, TensorSearch};
