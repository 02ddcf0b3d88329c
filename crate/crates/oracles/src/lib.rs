//! Test-only oracles, kept out of the shipped API surface.
