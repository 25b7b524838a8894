"""Turn an executable plan into one program over the whole configuration."""
import logging
from typing import List, Optional

from adt_lab.decomposition import PairingKind, SchemePlan
from adt_lab.exceptions import UnsupportedSchemeError
from adt_lab.schemes.elementary import non_feedback
from adt_lab.schemes.lemma_four import block_tiles, level_pool, place, take_chain
from adt_lab.schemes.layout import Placement, compose_programs
from adt_lab.schemes.program import Program
from adt_lab.settings import settings

logger = logging.getLogger(__name__)


def compose(
    plan: SchemePlan,
    stage_length: Optional[int] = None,
    layers: Optional[int] = None,
) -> Program:
    """
    Place every pairing of a plan on its own level chains.

    Chains are handed out per part type in pairing order, so the layout is
    reproducible for a given plan.

    :param plan: executable plan.
    :param stage_length: L of the stage-based units, settings default if None.
    :param layers: M of the layered unit, settings default if None.
    :raises UnsupportedSchemeError: if the plan is not executable.
    :return: combined program.
    """
    big = settings.default_stage_length if stage_length is None else stage_length
    depth = settings.default_layers if layers is None else layers
    cfg = plan.config
    if not plan.executable:
        logger.warning("Plan for %s (%s) is not executable", cfg, plan.target.value)
        raise UnsupportedSchemeError(f"plan for {cfg} has non-executable pairings")
    forward_pool = level_pool(cfg.m, cfg.n)
    backward_pool = level_pool(cfg.mt, cfg.nt)
    placements: List[Placement] = []
    for pairing in plan.pairings:
        if pairing.kind == PairingKind.NF:
            if pairing.forward is not None:
                for _ in range(pairing.forward_count):
                    placements.append(
                        Placement(
                            non_feedback(*pairing.forward),
                            take_chain(forward_pool, pairing.forward),
                            (),
                        ),
                    )
            if pairing.backward is not None:
                for _ in range(pairing.backward_count):
                    placements.append(
                        Placement(
                            non_feedback(*pairing.backward, backward=True),
                            (),
                            take_chain(backward_pool, pairing.backward),
                        ),
                    )
            continue
        forward, backward = pairing.forward, pairing.backward
        if forward is None or backward is None:
            raise UnsupportedSchemeError(f"{pairing.kind.value} pairing needs both parts")
        tiles = block_tiles(
            pairing.kind,
            pairing.forward_count,
            pairing.backward_count,
            big,
            depth,
        )
        placements.extend(
            place(tile, forward, backward, forward_pool, backward_pool) for tile in tiles
        )
    name = f"compose:{cfg}:{plan.target.value}"
    logger.info("Composed %s from %d unit copies", name, len(placements))
    return compose_programs(
        name,
        cfg,
        placements,
        {"L": big, "M": depth, "target": plan.target.value},
    )
