//! Recognition of localizable sensor networks by triangle bars: graph
//! classes, a combinatorial rigidity oracle and a message-passing
//! simulator of the three-phase recognition protocol.

pub mod classes;
pub mod cli;
pub mod ftg;
pub mod graph;
pub mod rigidity;
pub mod sim;
