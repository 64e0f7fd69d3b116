//! Exact computer algebra for Stückrad–Vogel cycles, Segre classes, and
//! local Segre numbers of polynomial ideals.

pub mod app;
pub mod chern;
pub mod error;
pub mod field;
pub mod groebner;
pub mod input;
pub mod mult;
pub mod poly;
pub mod rng;
pub mod scheme;
pub mod sv;

pub use error::{Error, Result};
pub use field::{Field, FieldSpec, PrimeField, Rationals, DEFAULT_PRIME};
pub use groebner::{Budget, HilbertData, HilbertSeries, Ideal};
pub use poly::{Homogeneity, Monomial, MonomialOrder, PolyRing, Polynomial};
pub use rng::RandomSource;
pub use scheme::{equalize_degrees, equalize_degrees_to, ProjScheme, SectionFamily};
pub use sv::{mass_check, sv_repeat, sv_run, MassCheck, SvResult};
pub use chern::{
    chern_total, ci_product_check, gysin_map, segre_from_sv, segre_from_sv_degrees,
    segre_regular_embedding, segre_total, sv_from_segre, CohomClass, SplitBundle,
};
pub use mult::{hs_multiplicity, local_length, mult_at_origin, segre_numbers, AffineIdeal, SegreNumbers};
pub use input::{InputFile, Parsed};
