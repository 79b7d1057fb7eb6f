#pragma once

/// Independent linear-theory growth rates used as test oracles.

namespace oracle {

/// Residual of the transverse bi-Maxwellian dispersion relation at omega = i gamma
/// (plasma frequency and light speed normalized to 1).
double weibel_dispersion(double gamma, double k, double vth1, double vth2);
/// Purely growing root of the relation above.
double weibel_growth_rate(double k, double vth1, double vth2);

/// Residual 1 - k^-2 int f0'(v) v / (v^2 + a^2) dv, a = gamma / k, for the
/// equal-weight unit-variance beams at +-drift.
double two_stream_dispersion(double gamma, double k, double drift);
double two_stream_growth_rate(double k, double drift);

}  // namespace oracle
