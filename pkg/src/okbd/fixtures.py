"""Surface models used by the bundled scenarios and the test-suite."""

from __future__ import annotations

from .lattice import NamedCurve, SurfaceModel


def hirzebruch(e: int) -> SurfaceModel:
    """F_e in the basis (T, F): T the section with T^2 = -e, F a fiber.

    Declared curves are the four torus-invariant curves. The flag point of
    the declared multiplicities is F meet T.
    """
    e = int(e)
    curves = [
        NamedCurve("T", (1, 0), genus=0, flag_multiplicity=1),
        NamedCurve("F", (0, 1), genus=0),
        NamedCurve("F_inf", (0, 1), genus=0),
        NamedCurve("S", (1, e), genus=0),
    ]
    fan = [((1, 0), "F"), ((0, 1), "T"), ((-1, e), "F_inf"), ((0, -1), "S")]
    return SurfaceModel(
        name=f"F{e}",
        gram=[[-e, 1], [1, 0]],
        canonical=[-2, -(2 + e)],
        curves=curves,
        effective_generators=[(1, 0), (0, 1)],
        toric_fan=fan,
    )


def ruled_f1() -> SurfaceModel:
    """F_1 in the basis (T, F) with T the tautological class, T^2 = 1.

    C0 = T - F is the (-1)-curve.
    """
    curves = [
        NamedCurve("T", (1, 0), genus=0),
        NamedCurve("F", (0, 1), genus=0),
        NamedCurve("C0", (1, -1), genus=0, flag_multiplicity=1),
        NamedCurve("F_inf", (0, 1), genus=0),
    ]
    fan = [((1, 0), "F"), ((0, 1), "C0"), ((-1, 1), "F_inf"), ((0, -1), "T")]
    return SurfaceModel(
        name="F1",
        gram=[[1, 1], [1, 0]],
        canonical=[-2, -1],
        curves=curves,
        effective_generators=[(1, -1), (0, 1)],
        toric_fan=fan,
    )


def k3_two_fibrations(fiber_product: int = 2) -> SurfaceModel:
    """A K3 lattice spanned by two elliptic fiber classes with F1.F2 = fiber_product.

    The effective cone is declared as cone(F1, F2); no (-2)-curves.
    """
    return SurfaceModel(
        name="K3",
        gram=[[0, fiber_product], [fiber_product, 0]],
        canonical=[0, 0],
        curves=[NamedCurve("F1", (1, 0), genus=1), NamedCurve("F2", (0, 1), genus=1)],
        effective_generators=[(1, 0), (0, 1)],
    )


def blown_up_plane() -> SurfaceModel:
    """P^2 blown up at two points, basis (H, E1, E2).

    Fibered over P^1 by the lines through the second point: fiber G = H - E2.
    """
    curves = [
        NamedCurve("E1", (0, 1, 0)),
        NamedCurve("E2", (0, 0, 1), flag_multiplicity=1),
        NamedCurve("M", (1, -1, -1)),
        NamedCurve("L1", (1, -1, 0)),
        NamedCurve("G", (1, 0, -1)),
    ]
    fan = [((1, 0), "L1"), ((1, 1), "E1"), ((0, 1), "M"), ((-1, 0), "E2"), ((-1, -1), "G")]
    return SurfaceModel(
        name="Bl2P2",
        gram=[[1, 0, 0], [0, -1, 0], [0, 0, -1]],
        canonical=[-3, 1, 1],
        curves=curves,
        effective_generators=[(0, 1, 0), (0, 0, 1), (1, -1, -1)],
        toric_fan=fan,
    )


def all_models() -> list[SurfaceModel]:
    return [hirzebruch(0), ruled_f1(), hirzebruch(2), hirzebruch(3), k3_two_fibrations(), blown_up_plane()]
