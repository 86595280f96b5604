//! placeholder
pub fn noop() {}
