#!/usr/bin/env python3
# Copyright 2026 The sgm-rdp Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Arbitrary-precision reference values frozen into the C++ tests.

Everything here is computed from definitions with mpmath at 50 digits:
log-space identities, erfc, and A_alpha / B_alpha as direct integrals over
the real line. Nothing is shared with the C++ implementation. Run it to
regenerate the constants quoted in tests/*_test.cc and the file
tests/fixtures/quad_{a,b}_values.txt.
"""

import sys

import mpmath as mp

mp.mp.dps = 50


def log_erfc(x):
  return mp.log(mp.erfc(mp.mpf(x)))


def moment(q, sigma, alpha, exponent):
  """int mu0(z) ((1-q) + q mu1(z)/mu0(z))^exponent dz."""
  q, sigma, alpha, exponent = map(mp.mpf, (q, sigma, alpha, exponent))
  var = sigma * sigma

  def f(z):
    mu0 = mp.npdf(z, 0, sigma)
    ratio = mp.exp((2 * z - 1) / (2 * var))
    return mu0 * ((1 - q) + q * ratio) ** exponent

  # Break points around the mass of the mixture components.
  pts = [-mp.inf]
  for c in sorted({0, 1, int(alpha), alpha, 0.5 + var * mp.log(1 / q - 1)}):
    for k in (-8, -4, -2, 0, 2, 4, 8):
      pts.append(mp.mpf(c) + k * sigma)
  pts = sorted(set(pts[1:]))
  pts = [-mp.inf] + pts + [mp.inf]
  return mp.quad(f, pts)


def log_a(q, sigma, alpha):
  return mp.log(moment(q, sigma, alpha, alpha))


FIXTURE_POINTS = (
    # (kind, q, sigma, alpha)
    ("B", 0.2, 1, 8),
    ("B", 0.1, 4, 2),
    ("B", 0.05, 4, 16),
    ("A", 0.2, 1, 8),
    ("A", 0.1, 4, 2),
    ("A", 0.05, 1, 2.5),
    ("A", 0.5, 10, 1.25),
)


def write_fixtures(directory):
  """Writes quad_a_values.txt and quad_b_values.txt: q sigma alpha value tol."""
  for kind in ("A", "B"):
    path = "%s/quad_%s_values.txt" % (directory, kind.lower())
    with open(path, "w") as f:
      f.write("# q sigma alpha value tol\n")
      f.write("# %s_alpha from tests/oracles/mp_oracle.py (mpmath, 50 digits)\n"
              % kind)
      for k, q, sigma, alpha in FIXTURE_POINTS:
        if k != kind:
          continue
        exponent = alpha if kind == "A" else 1 - alpha
        value = moment(q, sigma, alpha, exponent)
        f.write("%r %r %r %s 1e-10\n" % (q, sigma, alpha, mp.nstr(value, 17)))


def main():
  if len(sys.argv) == 3 and sys.argv[1] == "--fixtures":
    write_fixtures(sys.argv[2])
    return
  out = sys.stdout
  out.write("# log-space identities\n")
  out.write("log_add_exp(1000,1000) = %s\n" % mp.nstr(1000 + mp.log(2), 20))
  out.write("log_sub_exp(0,-50)     = %s\n"
            % mp.nstr(mp.log(1 - mp.exp(-50)), 20))
  out.write("# log erfc\n")
  for x in (-5, -1, 0.5, 3, 10, 26, 27, 30, 50, 100, 200):
    out.write("log_erfc(%s) = %s\n" % (x, mp.nstr(log_erfc(x), 20)))
  out.write("# ln A_alpha by direct quadrature\n")
  for q, sigma, alpha in ((0.01, 1, 1.5), (0.01, 1, 2), (0.2, 4, 3),
                          (0.1, 4, 4), (0.05, 1, 2.5), (0.2, 1, 1.5),
                          (0.5, 10, 1.25), (0.01, 10, 1.5), (0.2, 1, 16),
                          (0.1, 1, 32)):
    out.write("lnA(q=%s, sigma=%s, alpha=%s) = %s\n"
              % (q, sigma, alpha, mp.nstr(log_a(q, sigma, alpha), 20)))
  out.write("# B_alpha by direct quadrature\n")
  for q, sigma, alpha in ((0.2, 1, 8), (0.1, 4, 2)):
    out.write("B(q=%s, sigma=%s, alpha=%s) = %s\n"
              % (q, sigma, alpha,
                 mp.nstr(moment(q, sigma, alpha, 1 - alpha), 20)))


if __name__ == "__main__":
  main()
