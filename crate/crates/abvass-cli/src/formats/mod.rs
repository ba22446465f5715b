pub mod abvass_text;
pub mod dot;
pub mod ll_text;
pub mod minsky_text;
pub mod witness;
