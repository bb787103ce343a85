// Copyright 2026 The dephasim Authors
// SPDX-License-Identifier: Apache-2.0

pub mod bath;
pub mod cli;
pub mod dynamics;
pub mod error;
pub mod expm;
pub mod measures;
pub mod oracle;
pub mod quadrature;
pub mod special;

pub use error::{Error, Result};
