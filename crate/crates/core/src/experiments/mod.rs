//! Study harness: plausibility tables, replicated Vuong comparisons, scale
//! intervals, shape tables, mixtures and the closed-form mean check.
//!
//! Every study is a pure function of its inputs and master seed.

pub mod fixture;
pub mod means;
pub mod mixture;
pub mod plausibility;
pub mod scale;
pub mod shape;
pub mod vuong_study;

pub use fixture::{subject, SubjectFixture, SUBJECTS_2006};
pub use means::{mean_crosscheck, MeanCrosscheck, MeansRow};
pub use mixture::{mixture_sample, mixture_study, MixtureSpec, MixtureStudy, MixtureTrial};
pub use plausibility::{plausibility_row, plausibility_table, PlausibilityRow};
pub use scale::{scale_ci_study, ScaleRow};
pub use shape::{shape_table, ShapeTable};
pub use vuong_study::{bootstrap_vuong_study, compare_fits, simulation_study, VuongStudy, VuongStudyRow};
