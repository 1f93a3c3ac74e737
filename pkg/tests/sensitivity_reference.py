"""Expected sensitivities (kHz/T) and magnetic shifts (kHz) at B0 = 4 T.

Keys: (lower level, upper level, 2 M_s, M_N, M_N').
"""

EXPECTED = {
    ((0, 0), (2, 2), 1, 0, -2): (13.8e3, 55.0e3),
    ((0, 0), (2, 2), 1, 0, -1): (6.89e3, 27.6e3),
    ((0, 0), (2, 2), 1, 0, 0): (23.5, 111),
    ((0, 0), (2, 2), 1, 0, 1): (-6.83e3, -27.3e3),
    ((0, 0), (2, 2), 1, 0, 2): (-13.7e3, -54.8e3),
    ((0, 0), (2, 2), -1, 0, -2): (13.7e3, 54.9e3),
    ((0, 0), (2, 2), -1, 0, -1): (6.86e3, 27.4e3),
    ((0, 0), (2, 2), -1, 0, 0): (-3.61, -71.2),
    ((0, 0), (2, 2), -1, 0, 1): (-6.86e3, -27.5e3),
    ((0, 0), (2, 2), -1, 0, 2): (-13.7e3, -54.9e3),
}

_P = {
    1: [
        (-2, -2, -259, -1.08e3), (-1, -1, -114, -504), (0, 0, 32.5, 84.8),
        (1, 1, 181, 681), (2, 2, 333, 1.28e3),
        (-2, -1, -7.13e3, -28.5e3), (-1, -2, 6.76e3, 27.0e3), (-1, 0, -6.98e3, -28.0e3),
        (0, -1, 6.90e3, 27.5e3), (0, 1, -6.83e3, -27.4e3), (1, 0, 7.04e3, 28.1e3),
        (1, 2, -6.70e3, -26.8e3), (2, 1, 7.19e3, 28.7e3),
        (-2, 0, -14.0e3, -56.0e3), (-1, 1, -13.8e3, -55.4e3), (0, -2, 13.8e3, 55.0e3),
        (0, 2, -13.7e3, -54.8e3), (1, -1, 13.9e3, 55.6e3), (2, 0, 14.0e3, 56.2e3),
    ],
    -1: [
        (-2, -2, -289, -1.20e3), (-1, -1, -145, -608), (0, 0, 1.81, -16.3),
        (1, 1, 150, 576), (2, 2, 301, 1.17e3),
        (-2, -1, -7.17e3, -28.7e3), (-1, -2, 6.73e3, 26.9e3), (-1, 0, -7.01e3, -28.1e3),
        (0, -1, 6.87e3, 27.5e3), (0, 1, -6.86e3, -27.5e3), (1, 0, 7.01e3, 28.0e3),
        (1, 2, -6.70e3, -26.8e3), (2, 1, 7.15e3, 28.6e3),
        (-2, 0, -14.0e3, -56.2e3), (-1, 1, -13.9e3, -55.5e3), (0, -2, 13.7e3, 55.0e3),
        (0, 2, -13.7e3, -54.9e3), (1, -1, 13.9e3, 55.5e3), (2, 0, 14.0e3, 56.0e3),
    ],
}
for _ms, _rows in _P.items():
    for _mn, _mn2, _beta, _df in _rows:
        EXPECTED[((0, 2), (2, 2), _ms, _mn, _mn2)] = (_beta, _df)
