#!/usr/bin/env python3
"""Regenerates the bundled office and corridor fixtures.

The office is an 80 m x 20 m floor: a central corridor (y in [8, 12]) with
eight rooms above and eight below, connected by 1 m door gaps. The bundled walk
snakes through the corridor and every room so the dynamic map covers the whole
floor; at the default merge gates it settles at roughly 60-70 reference points.
"""

import json
import os

HERE = os.path.dirname(os.path.abspath(__file__))


OFFICE_XMAX = 80.0
OFFICE_ROOMS = 8
ROOM_W = OFFICE_XMAX / OFFICE_ROOMS

SOUTH_DOORS = [ROOM_W * i + ROOM_W / 2 for i in range(OFFICE_ROOMS)]
NORTH_DOORS = [ROOM_W * i + ROOM_W / 2 - 1.0 for i in range(OFFICE_ROOMS)]


def office_floorplan():
    walls = [
        [0, 0, OFFICE_XMAX, 0], [OFFICE_XMAX, 0, OFFICE_XMAX, 20],
        [OFFICE_XMAX, 20, 0, 20], [0, 20, 0, 0],
    ]
    # corridor walls with 1 m door gaps
    xs = 0.0
    for d in SOUTH_DOORS:
        walls.append([xs, 8, d - 0.5, 8])
        xs = d + 0.5
    walls.append([xs, 8, OFFICE_XMAX, 8])
    xs = 0.0
    for d in NORTH_DOORS:
        walls.append([xs, 12, d - 0.5, 12])
        xs = d + 0.5
    walls.append([xs, 12, OFFICE_XMAX, 12])
    # room partitions
    for i in range(1, OFFICE_ROOMS):
        walls.append([ROOM_W * i, 0, ROOM_W * i, 8])
        walls.append([ROOM_W * i, 12, ROOM_W * i, 20])
    return {"bounds": {"xmin": 0, "ymin": 0, "xmax": OFFICE_XMAX, "ymax": 20},
            "walls": walls}


def office_aps():
    spots = []
    for i in range(OFFICE_ROOMS):
        cx = ROOM_W * i + ROOM_W / 2
        spots.append((cx, 4) if i % 2 == 0 else (cx, 16))
    spots += [(12, 10), (OFFICE_XMAX - 12, 10),
              (OFFICE_XMAX / 2, 17), (OFFICE_XMAX / 2, 3), (OFFICE_XMAX / 2, 10)]
    aps = []
    for i, (x, y) in enumerate(spots):
        aps.append({
            "mac": f"02:00:00:00:00:{i:02x}",
            "x": x, "y": y,
            "tx_ref_dbm": -40.0,
            "path_loss_exponent": 2.8,
            "wall_loss_db": 5.0,
        })
    return aps


def south_room_visit(door_x):
    return [
        (door_x, 10), (door_x, 6.5),
        (door_x - 3.5, 6), (door_x - 3.5, 1.5), (door_x + 3.5, 1.5),
        (door_x + 3.5, 6), (door_x, 6.5), (door_x, 10),
    ]


def north_room_visit(door_x):
    return [
        (door_x, 10), (door_x, 13.5),
        (door_x + 3.5, 14), (door_x + 3.5, 18.5), (door_x - 3.5, 18.5),
        (door_x - 3.5, 14), (door_x, 13.5), (door_x, 10),
    ]


def office_walk():
    pts = [(2, 10)]
    # eastbound along the corridor, dipping into each south room
    for door in SOUTH_DOORS:
        pts.extend(south_room_visit(door))
    pts.append((OFFICE_XMAX - 2, 10))
    # westbound, dipping into each north room
    for door in reversed(NORTH_DOORS):
        pts.extend(north_room_visit(door))
    # one clean out-and-back corridor pass to densify the spine
    pts.append((2, 10.5))
    pts.append((OFFICE_XMAX - 2, 10.5))
    pts.append((2, 9.5))
    # drop consecutive duplicates
    walk = [pts[0]]
    for p in pts[1:]:
        if p != walk[-1]:
            walk.append(p)
    return [[float(x), float(y)] for x, y in walk]


def office_query_walk():
    """A second walk used for localization queries: deep dips into every room."""
    wp = [(2.5, 9.5)]
    for d in SOUTH_DOORS:
        wp += [(d, 9.5), (d, 6.0), (d - 2.5, 3.0), (d + 1.5, 4.5), (d, 6.0), (d, 9.5)]
    wp += [(OFFICE_XMAX - 2, 9.5), (OFFICE_XMAX - 3.5, 10.5)]
    for d in reversed(NORTH_DOORS):
        wp += [(d, 10.5), (d, 14.0), (d + 2.5, 17.0), (d - 1.5, 15.5), (d, 14.0), (d, 10.5)]
    wp.append((3, 10.5))
    walk = [wp[0]]
    for p in wp[1:]:
        if p != walk[-1]:
            walk.append(p)
    return [[float(x), float(y)] for x, y in walk]


def corridor_floorplan():
    return {
        "bounds": {"xmin": 0, "ymin": 0, "xmax": 60, "ymax": 2},
        "walls": [[0, 0, 60, 0], [0, 2, 60, 2]],
    }


def corridor_aps():
    aps = []
    for i, x in enumerate((5, 20, 35, 50)):
        aps.append({
            "mac": f"02:00:00:00:01:{i:02x}",
            "x": x, "y": 1.0,
            "tx_ref_dbm": -40.0,
            "path_loss_exponent": 2.5,
            "wall_loss_db": 5.0,
        })
    return aps


def dump(name, obj):
    with open(os.path.join(HERE, name), "w") as f:
        json.dump(obj, f, indent=2)
        f.write("\n")


def main():
    dump("office_floorplan.json", office_floorplan())
    dump("office_scenario.json", {
        "waypoints": office_walk(),
        "aps": office_aps(),
        "floorplan": "office_floorplan.json",
        "sim": {"seed": 1},
    })
    dump("office_query_scenario.json", {
        "waypoints": office_query_walk(),
        "aps": office_aps(),
        "floorplan": "office_floorplan.json",
        "sim": {"seed": 100},
    })
    dump("corridor_floorplan.json", corridor_floorplan())
    dump("corridor_scenario.json", {
        "waypoints": [[2, 1], [56, 1]],
        "aps": corridor_aps(),
        "floorplan": "corridor_floorplan.json",
        "sim": {"seed": 7},
    })
    print("fixtures written to", HERE)


if __name__ == "__main__":
    main()
