pub mod canonical;
pub mod claims;
pub mod constructions;
pub mod enumerate;
pub mod formula;
pub mod gap;
pub mod graph;
pub mod graph6;
pub mod invariants;
pub mod matching;
pub mod oracle;
pub mod properties;
pub mod ramsey;
