"""From a plain-text Lagrangian to its dispersion polynomial.

The `.lag` language declares fields, parameters and quadratic terms; the
compiler substitutes the plane wave exp(-i(w t - k x)) into the Euler operator
and assembles the symbol matrix.  Everything stays exact: parameters remain
symbols until you choose numbers.
"""

from facdisp import (
    builtin_lagrangian_text,
    dispersion_poly,
    format_poly,
    parse_lagrangian,
    render_lagrangian,
    symbol_matrix,
)

# the wave equation, written by hand
wave_src = """
dim 1
fields u
param c 1
term 1/2 dt(u) dt(u)
term -1/2*c^2 dx(u) dx(u)
"""
wave = parse_lagrangian(wave_src)
print("wave dispersion   :", format_poly(dispersion_poly(wave)))

# the torsion-bending wing beam ships with the package
wing = parse_lagrangian(builtin_lagrangian_text("wing"))
sym = symbol_matrix(wing)
print()
print("wing fields       :", wing.fields, " coupling parameter:", wing.coupling)
print("wing symbol matrix:")
print("   ", sym.matrix)
print("wing dispersion   :", format_poly(dispersion_poly(wing).subs(
    {n: v for n, v in wing.param_values.items() if n != wing.coupling})))

# the shear-deformable plate has a genuinely complex (Hermitian) symbol matrix
plate = parse_lagrangian(builtin_lagrangian_text("mindlin"))
psym = symbol_matrix(plate)
print()
print("plate entry kinds :")
for i in range(psym.n):
    print("   ", [psym.entry_kind(i, j) for j in range(psym.n)])
print("hermitian         :", psym.is_hermitian())

# render round-trips exactly
assert parse_lagrangian(render_lagrangian(plate)) == plate
print()
print("render/parse round-trip: exact")
