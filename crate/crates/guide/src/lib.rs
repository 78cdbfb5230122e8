//! The book chapters under `book/src` are included here verbatim, so
//! `cargo test --doc` compiles and runs every snippet the book shows.
