//! Holds the `acceptance` test target; run it with
//! `cargo test -p adend-suite --test acceptance`.
