pub mod crossing;
pub mod decomposition;
pub mod dp;
pub mod error;
pub mod geometry;
pub mod graph;
pub mod heuristics;
pub mod instance;
pub mod layout;
pub mod random;
pub mod render;
pub mod style;
