pub mod dsu;
pub mod engine;
pub mod words;
pub mod munn;
pub mod zoo;
pub mod stephen;
pub mod vmaps;
pub mod identities;
pub mod report;
