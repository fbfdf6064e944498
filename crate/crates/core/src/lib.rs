//! Exact tools for L-intersecting families of sets and of subspaces over
//! finite fields: bound evaluation, polynomial-method certificates, subspace
//! enumeration and exact maximum-family search.

pub mod exactnum;
pub mod setfamily;
pub mod bounds;
pub mod polymethod;
pub mod qspace;
pub mod search;
