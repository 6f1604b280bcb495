//! Exact Bernstein-Lusztig-Hecke algebras of Kac-Moody root data, their
//! principal series representations, and the stabilizer analysis behind
//! Kato's irreducibility criterion.

pub mod catalog;
pub mod coxeter;
pub mod field;
pub mod hecke;
pub mod infinite_family;
pub mod laurent;
pub mod linalg;
pub mod principal;
pub mod rootdata;
pub mod stabilizer;
pub mod verify;

pub use coxeter::{CoxeterError, Reflection, WeylElement, WeylGroup};
pub use field::{Field, Quadratic, ScalarError};
pub use hecke::{HeckeAlgebra, HeckeElt, HeckeError, Membership};
pub use laurent::{BinomialFactor, Character, LaurentError, LaurentPoly, RationalElt};
pub use num_rational::BigRational;
pub use principal::{IntegralPart, ItgVector, LowerSet, ModuleVector, PrincipalError, PrincipalSeries, Stats};
pub use infinite_family::{FamilyError, FamilyReport};
pub use rootdata::{Coroot, DatumError, KacMoodyMatrix, ParameterSet, RootDatum, RootGeneratingSystem, TitsCone};
pub use stabilizer::{AnalysisReport, KatoStatus, KatoVerdict, KatoWitness, SigmaCertificate, StabilizerError, TauAnalysis, TauContext, UcVerdict};
