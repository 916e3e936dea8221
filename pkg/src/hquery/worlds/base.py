from __future__ import annotations


class World:
    """An attachable backend.

    Subclasses register their host functions and variables in :meth:`attach`
    and may expose an enumerable root entity for FROM clauses.
    """

    world_id = "world"

    def attach(self, interp) -> None:
        interp.env.worlds[self.world_id] = self

    def is_root(self, handle: int) -> bool:
        return False

    def entities(self) -> list:
        return []
