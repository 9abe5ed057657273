#![allow(dead_code)]

pub mod braid;
pub mod catalog_cases;
