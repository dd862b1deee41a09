#![allow(dead_code)]

pub mod flat;
