//! Physical-layer security of a decode-and-forward mixed FSO/RF relay link.
//!
//! The optical hops (source→relay, source→optical eavesdropper) follow the
//! Málaga turbulence model with pointing errors, or its Gamma-Gamma special
//! case; the RF hops (relay→destination, relay→RF eavesdropper) are
//! Nakagami-m. The crate computes the secrecy outage probability lower bound
//! and the probability of strictly positive secrecy capacity in closed form
//! (Fox H / Meijer G), asymptotically, by direct quadrature and by Monte
//! Carlo simulation of the generative channel model.
//!
//! * [`specfun`]: Meijer G, Fox H and bivariate Fox H by Mellin–Barnes quadrature.
//! * [`channels`]: SNR distributions of the optical and RF links.
//! * [`secrecy`]: closed-form, asymptotic and quadrature secrecy metrics.
//! * [`mc`]: seeded, reproducible Monte Carlo estimator.
//! * [`cli`]: sweep configuration, CSV output and the validation report.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod channels;
pub mod cli;
pub mod mc;
pub mod secrecy;
pub mod specfun;

mod quadrature;
