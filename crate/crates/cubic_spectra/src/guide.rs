//! Narrative guide chapters live in `book/`; they are included as doc-tests
//! once written.
