"""Tour of the two detector parametrizations.

A static detector outside the hole can be pinned down either by the
background plus a horizon distance (M, d_A), or by what it actually
measures: its local KMS temperature and redshift (T_A, gamma_A).  The
second pair fixes the horizon radius, so sweeping it sweeps the mass.
"""

from btzharvest.geometry import (
    SpacetimeParams,
    distance_from_horizon,
    local_temperature,
    placement_from_thermal,
    radius_at_distance,
    redshift_from_distance,
    redshift_from_radius,
    thermal_from_radius,
)

ELL = 10.0

print(f"background: AdS length {ELL}, mass 0.01")
st = SpacetimeParams(ELL, 0.01)
print(f"horizon radius r_h = {st.horizon_radius}")
print(f"Hawking temperature T_H = {st.hawking_temperature:.6e}")
print()

print(" d_A        r         gamma      T_local    T*gamma/T_H")
for d in (0.1, 1.0, 7.0, 20.0, 50.0):
    r = radius_at_distance(d, st)
    g = redshift_from_radius(r, st)
    t = local_temperature(r, st)
    print(f"{d:5.1f} {r:10.4f} {g:10.6f} {t:10.6f} {t * g / st.hawking_temperature:12.9f}")
print()

# same information, entered the other way around
t_loc, gamma = thermal_from_radius(radius_at_distance(7.0, st), st)
rh, d = placement_from_thermal(t_loc, gamma, ELL)
print(f"(M, d_A) = (0.01, 7) -> (T, gamma) = ({t_loc:.6f}, {gamma:.6f})")
print(f"back again: r_h = {rh:.12f}, d_A = {d:.12f}")
print()

# the redshift factor has two closed forms; they agree at the same orbit
r = radius_at_distance(3.2, st)
print(f"gamma from radius   {redshift_from_radius(r, st):.15f}")
print(f"gamma from distance {redshift_from_distance(distance_from_horizon(r, st), st):.15f}")
print()

# thermal placements at fixed temperature: hotter means closer in
print("fixed T = 0.5, varying gamma (note the mass moving underneath)")
for g in (0.01, 0.1, 1.0, 10.0):
    rh, d = placement_from_thermal(0.5, g, ELL)
    print(f"  gamma {g:6.2f}: r_h = {rh:10.4f} (M = {(rh / ELL) ** 2:10.4g}), d = {d:.6f}")
