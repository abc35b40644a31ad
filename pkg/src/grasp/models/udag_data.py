"""Five-vertex DAGs whose edge weights cancel along two or more treks, making
one pair of vertices marginally independent although they are d-connected.

Each entry is ``(group, panel, cancelled_pair, edges, unfaithful)`` with 1-based
vertex labels.  ``edges`` are ``(parent, child)`` pairs of the true DAG and
``unfaithful`` lists every extra singleton CI statement ``(i, j, z)`` that
holds in the distribution without being a d-separation of the true DAG.
"""

UDAGS = (
    (1, 1, (1, 5), ((1, 4), (1, 5), (2, 5), (3, 5), (4, 5)),
     ((1, 5, (2, 3)), (1, 2, (3, 5)), (1, 3, (2, 5)), (1, 3, (5,)), (1, 5, (3,)), (1, 5, ()), (1, 2, (5,)), (1, 5, (2,)))),
    (1, 2, (1, 5), ((1, 4), (3, 4), (1, 5), (2, 5), (4, 5)),
     ((1, 5, (2, 3)), (1, 2, (3, 5)), (1, 3, (2, 5)), (1, 3, (5,)), (1, 5, (3,)), (1, 5, ()), (1, 2, (5,)), (1, 5, (2,)))),
    (1, 3, (1, 5), ((1, 4), (2, 4), (3, 4), (1, 5), (4, 5)),
     ((1, 5, (2, 3)), (1, 2, (3, 5)), (1, 3, (2, 5)), (1, 3, (5,)), (1, 5, (3,)), (1, 5, ()), (1, 2, (5,)), (1, 5, (2,)))),
    (2, 1, (1, 5), ((2, 3), (1, 4), (1, 5), (2, 5), (3, 5), (4, 5)),
     ((1, 5, (2, 3)), (1, 2, (3, 5)), (1, 3, (2, 5)), (1, 3, (5,)), (1, 5, (3,)), (1, 5, ()), (1, 2, (5,)), (1, 5, (2,)))),
    (2, 2, (1, 5), ((2, 3), (1, 4), (3, 4), (1, 5), (2, 5), (4, 5)),
     ((1, 5, (2, 3)), (1, 2, (3, 5)), (1, 3, (2, 5)), (1, 3, (5,)), (1, 5, (3,)), (1, 5, ()), (1, 2, (5,)), (1, 5, (2,)))),
    (2, 3, (1, 5), ((2, 3), (1, 4), (2, 4), (3, 4), (1, 5), (4, 5)),
     ((1, 5, (2, 3)), (1, 2, (3, 5)), (1, 3, (2, 5)), (1, 3, (5,)), (1, 5, (3,)), (1, 5, ()), (1, 2, (5,)), (1, 5, (2,)))),
    (3, 1, (1, 5), ((1, 3), (3, 4), (1, 5), (2, 5), (4, 5)),
     ((1, 5, ()), (1, 2, (5,)), (1, 5, (2,)))),
    (3, 2, (1, 5), ((1, 3), (3, 4), (1, 5), (2, 5), (3, 5), (4, 5)),
     ((1, 5, ()), (1, 2, (5,)), (1, 5, (2,)))),
    (3, 3, (1, 5), ((1, 3), (2, 4), (3, 4), (1, 5), (4, 5)),
     ((1, 5, ()), (1, 2, (5,)), (1, 5, (2,)))),
    (4, 1, (1, 5), ((1, 3), (2, 4), (3, 4), (1, 5), (3, 5), (4, 5)),
     ((1, 5, ()), (1, 2, (5,)), (1, 5, (2,)))),
    (4, 2, (1, 5), ((1, 3), (2, 4), (3, 4), (1, 5), (2, 5), (4, 5)),
     ((1, 5, ()), (1, 2, (5,)), (1, 5, (2,)))),
    (4, 3, (1, 5), ((1, 3), (2, 4), (3, 4), (1, 5), (2, 5), (3, 5), (4, 5)),
     ((1, 5, ()), (1, 2, (5,)), (1, 5, (2,)))),
    (5, 1, (1, 5), ((1, 3), (2, 3), (3, 4), (1, 5), (4, 5)),
     ((1, 5, ()), (1, 2, (5,)), (1, 5, (2,)))),
    (5, 2, (1, 5), ((1, 3), (2, 3), (3, 4), (1, 5), (3, 5), (4, 5)),
     ((1, 5, ()), (1, 2, (5,)), (1, 5, (2,)))),
    (5, 3, (1, 5), ((1, 3), (2, 3), (3, 4), (1, 5), (2, 5), (4, 5)),
     ((1, 5, ()), (1, 2, (5,)), (1, 5, (2,)))),
    (6, 1, (1, 5), ((1, 3), (2, 3), (3, 4), (1, 5), (2, 5), (3, 5), (4, 5)),
     ((1, 5, ()), (1, 2, (5,)), (1, 5, (2,)))),
    (6, 2, (1, 5), ((1, 3), (2, 3), (2, 4), (3, 4), (1, 5), (4, 5)),
     ((1, 5, ()), (1, 2, (5,)), (1, 5, (2,)))),
    (6, 3, (1, 5), ((1, 3), (2, 3), (2, 4), (3, 4), (1, 5), (3, 5), (4, 5)),
     ((1, 5, ()), (1, 2, (5,)), (1, 5, (2,)))),
    (7, 1, (1, 5), ((1, 3), (1, 4), (3, 4), (2, 5), (3, 5), (4, 5)),
     ((1, 5, ()), (1, 2, (5,)), (1, 5, (2,)))),
    (7, 2, (1, 5), ((1, 3), (1, 4), (2, 4), (3, 5), (4, 5)),
     ((1, 5, ()), (1, 2, (5,)), (1, 5, (2,)))),
    (7, 3, (1, 5), ((1, 3), (1, 4), (2, 4), (3, 4), (3, 5), (4, 5)),
     ((1, 5, ()), (1, 2, (5,)), (1, 5, (2,)))),
    (8, 1, (1, 5), ((1, 3), (1, 4), (2, 4), (2, 5), (3, 5), (4, 5)),
     ((1, 5, ()), (1, 2, (5,)), (1, 5, (2,)))),
    (8, 2, (1, 5), ((1, 3), (1, 4), (2, 4), (3, 4), (2, 5), (3, 5), (4, 5)),
     ((1, 5, ()), (1, 2, (5,)), (1, 5, (2,)))),
    (8, 3, (1, 5), ((1, 3), (2, 3), (1, 4), (3, 4), (3, 5), (4, 5)),
     ((1, 5, ()), (1, 2, (5,)), (1, 5, (2,)))),
    (9, 1, (1, 5), ((1, 3), (2, 3), (1, 4), (3, 4), (2, 5), (3, 5), (4, 5)),
     ((1, 5, ()), (1, 2, (5,)), (1, 5, (2,)))),
    (9, 2, (1, 5), ((1, 3), (1, 4), (3, 4), (1, 5), (2, 5), (3, 5), (4, 5)),
     ((1, 5, ()), (1, 2, (5,)), (1, 5, (2,)))),
    (9, 3, (1, 5), ((1, 3), (1, 4), (2, 4), (1, 5), (3, 5), (4, 5)),
     ((1, 5, ()), (1, 2, (5,)), (1, 5, (2,)))),
    (10, 1, (1, 5), ((1, 3), (1, 4), (2, 4), (3, 4), (1, 5), (4, 5)),
     ((1, 5, ()), (1, 2, (5,)), (1, 5, (2,)))),
    (10, 2, (1, 5), ((1, 3), (1, 4), (2, 4), (3, 4), (1, 5), (3, 5), (4, 5)),
     ((1, 5, ()), (1, 2, (5,)), (1, 5, (2,)))),
    (10, 3, (1, 5), ((1, 3), (1, 4), (2, 4), (1, 5), (2, 5), (3, 5), (4, 5)),
     ((1, 5, ()), (1, 2, (5,)), (1, 5, (2,)))),
    (11, 1, (1, 5), ((1, 2), (2, 3), (3, 4), (1, 5), (4, 5)),
     ((1, 5, ()),)),
    (11, 2, (1, 5), ((1, 2), (2, 3), (3, 4), (1, 5), (3, 5), (4, 5)),
     ((1, 5, ()),)),
    (11, 3, (1, 5), ((1, 2), (2, 3), (3, 4), (1, 5), (2, 5), (4, 5)),
     ((1, 5, ()),)),
    (12, 1, (1, 5), ((1, 2), (2, 3), (3, 4), (1, 5), (2, 5), (3, 5), (4, 5)),
     ((1, 5, ()),)),
    (12, 2, (1, 5), ((1, 2), (2, 3), (2, 4), (1, 5), (3, 5), (4, 5)),
     ((1, 5, ()),)),
    (12, 3, (1, 5), ((1, 2), (2, 3), (2, 4), (3, 4), (1, 5), (3, 5), (4, 5)),
     ((1, 5, ()),)),
    (13, 1, (1, 5), ((1, 2), (2, 3), (2, 4), (1, 5), (2, 5), (3, 5), (4, 5)),
     ((1, 5, ()),)),
    (13, 2, (1, 5), ((1, 2), (2, 3), (2, 4), (3, 4), (1, 5), (2, 5), (3, 5), (4, 5)),
     ((1, 5, ()),)),
    (13, 3, (1, 5), ((1, 2), (2, 3), (1, 4), (3, 5), (4, 5)),
     ((1, 5, ()),)),
    (14, 1, (1, 5), ((1, 2), (2, 3), (1, 4), (3, 4), (3, 5), (4, 5)),
     ((1, 5, ()),)),
    (14, 2, (1, 5), ((1, 2), (2, 3), (1, 4), (2, 5), (4, 5)),
     ((1, 5, ()),)),
    (14, 3, (1, 5), ((1, 2), (2, 3), (1, 4), (2, 5), (3, 5), (4, 5)),
     ((1, 5, ()),)),
    (15, 1, (1, 5), ((1, 2), (2, 3), (1, 4), (3, 4), (2, 5), (4, 5)),
     ((1, 5, ()),)),
    (15, 2, (1, 5), ((1, 2), (2, 3), (1, 4), (3, 4), (2, 5), (3, 5), (4, 5)),
     ((1, 5, ()),)),
    (15, 3, (1, 5), ((1, 2), (2, 3), (1, 4), (2, 4), (3, 5), (4, 5)),
     ((1, 5, ()),)),
    (16, 1, (1, 5), ((1, 2), (2, 3), (1, 4), (2, 4), (3, 4), (3, 5), (4, 5)),
     ((1, 5, ()),)),
    (16, 2, (1, 5), ((1, 2), (2, 3), (1, 4), (2, 4), (2, 5), (3, 5), (4, 5)),
     ((1, 5, ()),)),
    (16, 3, (1, 5), ((1, 2), (2, 3), (1, 4), (2, 4), (3, 4), (2, 5), (4, 5)),
     ((1, 5, ()),)),
    (17, 1, (1, 5), ((1, 2), (2, 3), (1, 4), (2, 4), (3, 4), (2, 5), (3, 5), (4, 5)),
     ((1, 5, ()),)),
    (17, 2, (1, 5), ((1, 2), (2, 3), (1, 4), (1, 5), (3, 5), (4, 5)),
     ((1, 5, ()),)),
    (17, 3, (1, 5), ((1, 2), (2, 3), (1, 4), (1, 5), (2, 5), (3, 5), (4, 5)),
     ((1, 5, ()),)),
    (18, 1, (1, 5), ((1, 2), (2, 3), (1, 4), (3, 4), (1, 5), (2, 5), (4, 5)),
     ((1, 5, ()),)),
    (18, 2, (1, 5), ((1, 2), (2, 3), (1, 4), (3, 4), (1, 5), (2, 5), (3, 5), (4, 5)),
     ((1, 5, ()),)),
    (18, 3, (1, 5), ((1, 2), (2, 3), (1, 4), (2, 4), (1, 5), (3, 5), (4, 5)),
     ((1, 5, ()),)),
    (19, 1, (1, 5), ((1, 2), (2, 3), (1, 4), (2, 4), (1, 5), (2, 5), (3, 5), (4, 5)),
     ((1, 5, ()),)),
    (19, 2, (1, 4), ((1, 2), (1, 3), (2, 4), (3, 4), (3, 5), (4, 5)),
     ((1, 4, ()),)),
    (19, 3, (1, 5), ((1, 2), (1, 3), (2, 4), (3, 4), (3, 5), (4, 5)),
     ((1, 5, ()),)),
    (20, 1, (1, 4), ((1, 2), (1, 3), (2, 4), (3, 4), (1, 5), (3, 5)),
     ((1, 4, ()),)),
    (20, 2, (1, 4), ((1, 2), (1, 3), (2, 4), (3, 4), (1, 5), (3, 5), (4, 5)),
     ((1, 4, ()),)),
    (20, 3, (1, 5), ((1, 2), (1, 3), (2, 4), (3, 4), (1, 5), (3, 5), (4, 5)),
     ((1, 5, ()),)),
    (21, 1, (1, 5), ((1, 2), (1, 3), (1, 4), (2, 4), (3, 4), (3, 5), (4, 5)),
     ((1, 5, ()),)),
)
