pub mod discord;
pub mod koashi;
pub mod purify;
pub mod sweep;
