//! The guide's chapters as modules, so their snippets run as doc-tests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/resonance.md")]
pub mod resonance {}

#[doc = include_str!("../../../book/src/prototype.md")]
pub mod prototype {}

#[doc = include_str!("../../../book/src/spectrum.md")]
pub mod spectrum {}

#[doc = include_str!("../../../book/src/bounds.md")]
pub mod bounds {}

#[doc = include_str!("../../../book/src/two_dimensions.md")]
pub mod two_dimensions {}

#[doc = include_str!("../../../book/src/landscape.md")]
pub mod landscape {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

#[doc = include_str!("../../../README.md")]
pub mod readme {}
