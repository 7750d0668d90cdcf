//! placeholder (under construction)
use crate::error::Result;
use crate::numkernel::{BigReal, PrecisionContext};

pub fn zeta_prime_int(_s: u32, ctx: &PrecisionContext) -> Result<BigReal> {
    Ok(ctx.zero())
}
pub fn polygamma(_n: u32, _x: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    Ok(ctx.zero())
}
pub fn ei(_x: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    Ok(ctx.zero())
}
