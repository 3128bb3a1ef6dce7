//! Exact toric computations for G-Hilbert schemes of abelian subgroups of `SL_3`:
//! the G-Hilb triangulation of the junior simplex, the K-theory class of the
//! McKay image of each character skyscraper, and the share of characters whose
//! image is a sheaf in degree 0.

pub mod error;
pub mod fan;
pub mod ggraph;
pub mod group;
pub mod ktheory;
mod matrix;
pub mod oracle;
pub mod render;
pub mod report;
pub mod survey;

pub use error::{Error, Result};
pub use fan::{build_fan, fan_statistics, Fan, FanStatistics, Triangle, Wall};
pub use ggraph::{ConeFailure, GGraph, MinimaTable};
pub use group::{parse_group_spec, Character, Exponent, GroupSpec, JuniorPoint, LatticeContext};
pub use ktheory::{B0Report, Conventions, KTheory, PsiClassRecord};
pub use oracle::{brute_duality_oracle, sampling_fan_oracle, OracleConfig};
pub use render::{emit_svg, emit_tikz, Annotation, AnnotationMode};
pub use report::{Analysis, AnalysisReport, CheckResult, Fraction};
pub use survey::{aggregate, enumerate_embeddings, sweep, sweep_to_csv, SurveyRecord, SweepOptions};
