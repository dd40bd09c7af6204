//! Command-line plumbing for minorkit: graph formats, sweeps over the
//! constructions, and consistency checks of the treewidth bounds.

pub mod cross_check;
pub mod formats;
pub mod sweep;
