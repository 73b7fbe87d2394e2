//! Warped-product model manifolds: curvature generators, asymptotic
//! flatness, 1D channel reduction, and essential-spectrum classification.

mod channel;
mod classify;
mod curvature;
mod model;
mod warp;

pub use channel::{
    assemble_channel, channel_operators, window_bottom, ChannelGrid, ChannelLabel,
    ChannelOperator, ChannelTag,
};
pub use classify::{
    classify_all, classify_essential_spectrum, ChannelSummary, DegreeClassification,
};
pub use curvature::{
    curvature_generators, curvature_magnitude, is_asymptotically_flat, Flatness, FlatnessReport,
};
pub use model::{BaseLine, FactorSpace, WarpedFactor, WarpedModel};
pub use warp::{CustomWarp, WarpFunction, WarpTail};
