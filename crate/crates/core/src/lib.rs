pub mod error;
pub mod exec;
pub mod experiments;
pub mod factors;
pub mod graph;
pub mod kelmans;
pub mod schedules;
pub mod spectral;
