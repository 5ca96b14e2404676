import pytest

from heckesat.groups import resolve_preset
from heckesat.rootdata import (
    RootSystem,
    build_root_system,
    coroot_lattice,
    coweight_lattice,
)
from heckesat.satfactor import (
    ExtendedDiagram,
    connection_index,
    fundamental_group_action,
    k_R,
    k_for_group,
    k_w,
    saturation_factor,
)

# (type, k_R, k_w, index of connection)
# k_w(C_l), l >= 3, is 4: the coweight class omega_l^vee acts on the extended
# diagram by the end-to-end reversal, swapping label-2 vertices whose orbit
# barycenter only becomes special after scaling by 4.
TABLE = [
    ("A1", 1, 2, 2),
    ("A2", 1, 3, 3),
    ("A3", 1, 4, 4),
    ("A4", 1, 5, 5),
    ("A5", 1, 6, 6),
    ("A6", 1, 7, 7),
    ("A7", 1, 8, 8),
    ("B2", 2, 2, 2),
    ("B3", 2, 2, 2),
    ("B4", 2, 2, 2),
    ("B5", 2, 2, 2),
    ("B6", 2, 2, 2),
    ("B7", 2, 2, 2),
    ("C2", 2, 2, 2),
    ("C3", 2, 4, 2),
    ("C4", 2, 4, 2),
    ("C5", 2, 4, 2),
    ("C6", 2, 4, 2),
    ("C7", 2, 4, 2),
    ("D4", 2, 2, 4),
    ("D5", 2, 4, 4),
    ("D6", 2, 4, 4),
    ("D7", 2, 4, 4),
    ("G2", 6, 6, 1),
    ("F4", 12, 12, 1),
    ("E6", 6, 6, 3),
    ("E7", 12, 12, 2),
    ("E8", 60, 60, 1),
]


@pytest.mark.parametrize("label,kr,kw,idx", TABLE)
def test_saturation_table(label, kr, kw, idx):
    sys = build_root_system(label)
    assert k_R(sys) == kr
    assert k_w(sys) == kw
    assert connection_index(sys) == idx


@pytest.mark.parametrize("label", ["A2", "A3", "B2", "B3", "C3", "D4", "D5", "G2", "F4"])
def test_coroot_lattice_reproduces_k_R(label):
    sys = build_root_system(label)
    assert saturation_factor(sys, coroot_lattice(sys)) == k_R(sys)


GROUP_TABLE = [
    ("SL2", 1),
    ("SL4", 1),
    ("SL8", 1),
    ("GL3", 1),
    ("GL4", 1),
    ("PSL2", 2),
    ("PSL3", 3),
    ("PSL5", 5),
    ("Spin5", 2),
    ("SO5", 2),
    ("Spin9", 2),
    ("SO9", 2),
    ("Sp4", 2),
    ("PSp4", 2),
    ("Sp8", 2),
    ("PSp8", 4),
    ("Spin8", 2),
    ("SO8", 2),
    ("PSO8", 2),
    ("Spin10", 2),
    ("SO10", 2),
    ("PSO10", 4),
    ("PSO12", 4),
    ("PSO14", 4),
    ("G2", 6),
    ("F4", 12),
    ("E6", 6),
    ("E6ad", 6),
    ("E7", 12),
    ("E7ad", 12),
    ("E8", 60),
]


@pytest.mark.parametrize("name,k", GROUP_TABLE)
def test_group_presets(name, k):
    assert k_for_group(name) == k


def test_extended_diagram_labels():
    g2 = build_root_system("G2")
    d = ExtendedDiagram.build(g2)
    assert d.labels == (1, 3, 2)
    b2 = build_root_system("B2")
    assert ExtendedDiagram.build(b2).labels == (1, 1, 2)


def test_fundamental_group_action_sizes():
    for label, idx in [("A2", 3), ("A4", 5), ("B3", 2), ("D4", 4), ("G2", 1)]:
        sys = build_root_system(label)
        autos = fundamental_group_action(sys, coweight_lattice(sys))
        assert len(autos) == idx
        ident = tuple(range(sys.rank + 1))
        assert sum(1 for a in autos if a.permutation == ident) == 1


def test_an_action_is_cyclic_rotation():
    # with L = P(R^vee) the A_n classes act transitively on the n+1 + 1 nodes
    sys = build_root_system("A3")
    autos = fundamental_group_action(sys, coweight_lattice(sys))
    orders = sorted(
        max(len(c) for c in a.orbits()) for a in autos
    )
    assert orders == [1, 2, 4, 4]


def test_trivial_fundamental_group():
    sys = build_root_system("B3")
    autos = fundamental_group_action(sys, coroot_lattice(sys))
    assert len(autos) == 1
    assert autos[0].permutation == tuple(range(sys.rank + 1))


def test_product_saturation():
    sys = build_root_system("B2xA1")
    assert k_R(sys) == 2
    assert k_w(sys) == 2
    sys2 = build_root_system("G2xA2")
    assert k_R(sys2) == 6
    assert k_w(sys2) == 6


def test_unknown_preset():
    with pytest.raises(ValueError):
        resolve_preset("SU5")
