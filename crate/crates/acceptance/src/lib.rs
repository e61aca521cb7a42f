//! Holds the `acceptance` test target. It lives in its own package so that
//! it runs after the library's own test suites.
