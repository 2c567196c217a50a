#![allow(dead_code)]

pub mod queue_oracle;
