//! The guide chapters, compiled here so that their snippets run as doc-tests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/boolean-functions.md")]
pub mod boolean_functions {}
#[doc = include_str!("../../../book/src/threshold-functions.md")]
pub mod threshold_functions {}
#[doc = include_str!("../../../book/src/classification.md")]
pub mod classification {}
#[doc = include_str!("../../../book/src/enumeration.md")]
pub mod enumeration {}
#[doc = include_str!("../../../book/src/chambers.md")]
pub mod chambers {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
