//! Partially concatenated CSS codes: finite fields, classical and quantum code
//! constructions, decoders, encoding circuits, rate bounds and Monte Carlo
//! experiments.

pub mod bounds;
pub mod bundle;
pub mod channel;
pub mod cli;
pub mod codes;
pub mod css;
pub mod decode;
pub mod galois;
pub mod harness;
pub mod matgf;
pub mod stabcirc;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/fields-and-matrices.md")]
    mod fields_and_matrices {}
    #[doc = include_str!("../../../book/src/classical-codes.md")]
    mod classical_codes {}
    #[doc = include_str!("../../../book/src/css-codes.md")]
    mod css_codes {}
    #[doc = include_str!("../../../book/src/fast-family.md")]
    mod fast_family {}
    #[doc = include_str!("../../../book/src/decoders.md")]
    mod decoders {}
    #[doc = include_str!("../../../book/src/encoding-circuits.md")]
    mod encoding_circuits {}
    #[doc = include_str!("../../../book/src/enlarged.md")]
    mod enlarged {}
    #[doc = include_str!("../../../book/src/bounds.md")]
    mod bounds {}
    #[doc = include_str!("../../../book/src/experiments.md")]
    mod experiments {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
