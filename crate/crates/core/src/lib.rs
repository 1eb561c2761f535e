//! Fixed-point models and proof checking for a theory of truth and
//! paradoxicality over self-referential sentence universes.
//!
//! The library is organised around five stages:
//!
//! 1. [`syntax`] — a Tait-style language with truth (`T`) and paradoxicality
//!    (`P`) predicates, Gödel coding of sentences via a definition
//!    environment, universe closure, and the base-paradoxicality recognizer.
//! 2. [`semantics`] — Strong Kleene three-valued evaluation over partial
//!    models `(T⁺, T⁻, P⁺, P⁻)`, sequent satisfaction, and countermodel
//!    search.
//! 3. [`jump`] — the paradoxicality closure conditions, the double jump
//!    operator, least-fixed-point iteration, paradoxicality ranks, and
//!    sentence classification.
//! 4. [`calculus`] — sequents, proof trees, axiom schema instantiation,
//!    derived-rule macros, proof checking for the four systems, and model
//!    cross-validation.
//! 5. [`zoo`] — constructors for the canonical case-study sentences and the
//!    bundled proof corpus.

pub mod calculus;
pub mod jump;
pub mod semantics;
pub mod syntax;
pub mod zoo;

pub use syntax::{Code, DefEnv, Formula, Nat, Term, Universe};
