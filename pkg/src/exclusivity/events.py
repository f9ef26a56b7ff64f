"""Measurement events and the exclusivity relation.

An event assigns an outcome to each of a finite set of settings.  Two events
are exclusive when some setting they share receives different outcomes.

Three families are built here:

* the CHSH events ("London", party ``"L"``): for each pair of local settings
  ``(i, j)`` the two outcome pairs ``(a, b)`` in ``{-1, 1}^2`` whose bits
  satisfy ``bit(a) XOR bit(b) == i*j``;
* the cyclic noncontextuality events ("Paris", party ``"P"``): event ``i``
  is outcomes ``(0, 0, 1)`` for observables ``(i, i+1, i+2) mod 8``;
* eight joint events pairing one member of each family, which are pairwise
  exclusive.
"""
from dataclasses import dataclass
import itertools
import string

from .errors import InputError

LONDON = "L"
PARIS = "P"

#: Outcome alphabet per party; parties not listed accept any integer.
ALPHABETS = {LONDON: (-1, 1), PARIS: (0, 1)}

PARIS_SIZE = 8


@dataclass(frozen=True, order=True)
class Setting:
    party: str
    name: object

    @property
    def token(self):
        """Short form used in event strings (``"A1"`` -> ``"1"``)."""
        if isinstance(self.name, int):
            return str(self.name)
        digits = str(self.name).lstrip(string.ascii_letters)
        return digits or str(self.name)


class Event:
    """An immutable outcome assignment ``{Setting: int}``.

    Equality and hashing are by the assignment mapping; the insertion order
    is kept only for display.
    """

    __slots__ = ("_items", "_key")

    def __init__(self, assignment):
        items = tuple(assignment.items() if isinstance(assignment, dict) else assignment)
        if not items:
            raise InputError("an event needs at least one setting")
        seen = set()
        for setting, outcome in items:
            if not isinstance(setting, Setting):
                raise InputError(f"not a Setting: {setting!r}")
            if setting in seen:
                raise InputError(f"setting {setting} assigned twice")
            seen.add(setting)
            alphabet = ALPHABETS.get(setting.party)
            if alphabet is not None and outcome not in alphabet:
                raise InputError(
                    f"outcome {outcome!r} not in {alphabet} for party {setting.party!r}"
                )
        self._items = tuple((s, int(o)) for s, o in items)
        self._key = frozenset(self._items)

    @property
    def items(self):
        return self._items

    @property
    def settings(self):
        return tuple(s for s, _ in self._items)

    @property
    def parties(self):
        return tuple(dict.fromkeys(s.party for s, _ in self._items))

    def outcome(self, setting):
        for s, o in self._items:
            if s == setting:
                return o
        raise KeyError(setting)

    def as_dict(self):
        return dict(self._items)

    def __eq__(self, other):
        if not isinstance(other, Event):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __str__(self):
        outs, sets = [], []
        for party in self.parties:
            group = [(s, o) for s, o in self._items if s.party == party]
            outs.append(",".join(str(o) for _, o in group))
            sets.append(",".join(s.token for s, _ in group))
        return ";".join(outs) + "|" + ";".join(sets)

    def __repr__(self):
        return f"Event({self})"


@dataclass(frozen=True)
class EventFamily:
    label: str
    events: tuple

    def __len__(self):
        return len(self.events)

    def __iter__(self):
        return iter(self.events)

    def __getitem__(self, i):
        return self.events[i]

    def index(self, event):
        return self.events.index(event)


def exclusive(a, b):
    """True iff ``a`` and ``b`` give different outcomes to a shared setting."""
    mine = a.as_dict()
    return any(s in mine and mine[s] != o for s, o in b.items)


def london_setting(side, index):
    return Setting(LONDON, f"{side}{index}")


def london_event(a, b, i, j):
    return Event([(london_setting("A", i), a), (london_setting("B", j), b)])


def london_events():
    """The eight CHSH events, ordered by ``(i, j)`` then by ``a`` descending."""
    events = []
    for i, j in itertools.product((0, 1), repeat=2):
        for a, b in itertools.product((1, -1), repeat=2):
            if ((a + 1) // 2) ^ ((b + 1) // 2) == i * j:
                events.append(london_event(a, b, i, j))
    return EventFamily("CHSH", tuple(events))


def paris_event(i, outcomes=(0, 0, 1)):
    obs = [(i + k) % PARIS_SIZE for k in range(3)]
    return Event([(Setting(PARIS, o), out) for o, out in zip(obs, outcomes)])


def paris_events():
    """Event ``i`` is outcomes ``(0, 0, 1)`` on observables ``(i, i+1, i+2) mod 8``."""
    return EventFamily("NC8", tuple(paris_event(i) for i in range(PARIS_SIZE)))


def joint_event(l, p):
    """Union of a London-only event and a Paris-only event."""
    if set(l.parties) != {LONDON}:
        raise InputError(f"first event must use only party {LONDON!r} settings: {l}")
    if set(p.parties) != {PARIS}:
        raise InputError(f"second event must use only party {PARIS!r} settings: {p}")
    return Event(l.items + p.items)


# (London family index, Paris family index) of the eight pairwise-exclusive
# joint events, in their conventional order.
SLP_PAIRS = ((0, 6), (1, 2), (2, 5), (3, 1), (4, 7), (5, 3), (6, 0), (7, 4))


def slp_events():
    """The eight pairwise-exclusive joint events whose probabilities sum to 1."""
    lon, par = london_events(), paris_events()
    return EventFamily("joint", tuple(joint_event(lon[i], par[k]) for i, k in SLP_PAIRS))
