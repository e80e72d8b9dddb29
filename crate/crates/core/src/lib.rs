//! Combinatorics of nonsingular Smale flows on 3-manifolds: Lyapunov graph
//! checks, summand bounds, constructive graph families, and boundary
//! analysis of thickened templates.

pub mod builders;
pub mod cli;
pub mod diag;
pub mod doc;
pub mod dot;
pub mod gf2;
pub mod lyapgraph;
pub mod template;
