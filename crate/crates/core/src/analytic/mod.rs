pub mod diff;
pub mod eisenstein;
pub mod eval;
pub mod hyper;
pub mod quad;
pub mod laurent;
pub mod lfunc;
pub mod poincare;
pub mod special;
