//! Asymmetric representatives formulation for vertex coloring.
//!
//! A coloring of `G` is encoded by 0/1 variables `x_uv`, one per non-edge
//! `uv` of `G` oriented by a vertex ordering, where `x_uv = 1` means that `u`
//! represents the color class of `v`. The 0/1 points of the compact model are
//! exactly the stable sets of an auxiliary graph built on the non-edges of
//! `G` (see [`rep`]), which is what lets stable set polytope results carry
//! over to coloring polytopes.
//!
//! Module map:
//!
//! * [`graph`], [`ordering`], [`matching`], [`structure`] and [`io`]: graphs,
//!   vertex orderings, precolorings, exact small-scale invariants and the
//!   text formats.
//! * [`rep`]: the auxiliary graph, line graphs, claw-free / quasi-line
//!   recognition and the path gadget graph for co-paw-free complements.
//! * [`formulation`] and [`lp`]: the original and compact models, objectives
//!   for coloring, max-coloring and precoloring extension, LP export.
//! * [`inequalities`]: matching, internal and clique-family inequalities and
//!   a brute-force separator.
//! * [`lab`]: exact enumeration, exact rational simplex, double description
//!   and the verification routines built on them.
//! * [`solvers`]: matching-based and exact solvers.
//! * [`corpus`]: exhaustive generation of small graphs up to isomorphism.

pub mod caps;
pub mod corpus;
pub mod error;
pub mod formulation;
pub mod graph;
pub mod inequalities;
pub mod io;
pub mod json;
pub mod lab;
pub mod lp;
pub mod matching;
pub mod ordering;
pub mod rational;
pub mod rep;
pub mod solvers;
pub mod structure;

pub use caps::Caps;
pub use error::{Error, Result};
pub use formulation::{
    build_model, Family, LinearInequality, ModelSpec, PointVector, Problem, Sense, Var, Variant,
};
pub use graph::Graph;
pub use ordering::{Precoloring, VertexOrdering, WeightFunction};
pub use rational::Rational;
pub use rep::{build_rep, RepGraph};
