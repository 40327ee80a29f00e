//! Groebner-Shirshov bases for finitely presented associative algebras and
//! semigroup algebras.
//!
//! The crate is organised bottom-up:
//!
//! - [`field`], [`word`], [`poly`]: exact coefficients, free-monoid words and
//!   noncommutative polynomials.
//! - [`order`]: the monomial orders (deg-lex, weighted deg-lex, tower,
//!   reverse tower) together with the length-bound metadata that decides
//!   whether a growth computation for the monomial algebra transfers to the
//!   algebra itself.
//! - [`rewrite`]: oriented rules, parametric rule schemas and reduction to
//!   normal form.
//! - [`completion`]: compositions, verification of a candidate basis,
//!   bounded completion, inter-reduction and schema folding.
//! - [`growth`]: the automaton of normal words, exact census, growth
//!   classification, filtration tables and free-subalgebra certificates.
//! - [`presentations`]: presentation values, the Manturov and Ore
//!   constructors, and the word problem.

pub mod code;
pub mod completion;
pub mod error;
pub mod field;
pub mod growth;
pub mod order;
pub mod poly;
pub mod presentations;
pub mod rewrite;
pub mod word;

pub use code::{sardinas_patterson, AmbiguousFactorization};
pub use completion::{
    certify, complete, compositions, infer_schemas, inter_reduce, verify_gsb, CompletionCaps,
    CompletionReport, CompletionStatus, CompositionKind, CompositionRecord, VerificationReport,
};
pub use error::{GsbError, Result};
pub use field::{Field, Fp, Rational};
pub use growth::{
    build_irr_automaton, classify_growth, count_normal_words, dim_filtration, DEFAULT_STATE_CAP,
    free_submonoid_check, gkdim_report, Census, FiltrationTable, ForbiddenSet, FreeCheckResult,
    GrowthClass, GrowthReport, IrrAutomaton, PumpedPattern, Validity,
};
pub use order::{LengthBound, MonomialOrder};
pub use poly::Polynomial;
pub use presentations::{
    manturov, ore_extension, word_problem, ManturovSpec, OreSpec, Presentation,
    PresentationKind, WordProblemVerdict,
};
pub use rewrite::{Occurrence, Origin, ReductionStep, RewriteSystem, Rule, RuleRef, RuleSchema};
pub use word::{Alphabet, Letter, Word};
