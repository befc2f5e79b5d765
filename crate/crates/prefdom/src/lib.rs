//! Tools for recognizing one-dimensional structure in preference profiles.
//!
//! A profile is a list of voters, each ranking the same set of alternatives
//! from best to worst. This crate decides three nested structural questions
//! about such profiles:
//!
//! * is the profile *single-peaked* on some axis ([`axes`]),
//! * is it *single-crossing* in some voter order ([`crossing`]),
//! * does it admit a *one-dimensional Euclidean* representation, where every
//!   voter and alternative gets a point on the line and each voter ranks
//!   alternatives by distance ([`euclid`])?
//!
//! Euclidean feasibility on a fixed axis reduces to a system of strict linear
//! inequalities, decided exactly over the rationals by [`exactlp`]. Failures
//! come with Farkas certificates; successes come with embeddings that can be
//! re-verified independently.
//!
//! The [`family`] module constructs a parametric family of profiles that are
//! single-peaked and single-crossing yet not Euclidean, while deleting any
//! single voter makes them Euclidean. The family shows that no finite list of
//! forbidden subprofiles can characterize the Euclidean domain.

pub mod axes;
pub mod cli;
pub mod crossing;
pub mod euclid;
pub mod exactlp;
pub mod family;
pub mod profile;

#[cfg(test)]
pub(crate) mod testutil;
