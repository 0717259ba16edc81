//! Holds the `acceptance` test target. The package name sorts after
//! `nset-core`, so under cargo's fail-fast default a failing criterion here
//! never hides the core property suites.
