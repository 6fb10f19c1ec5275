from apps.linalg.matrices import QMatrix

# ray keys of the sl(3) Cartan roots e1-e2, e2-e3, e1-e3 on (H1, H2)
ALPHA = (2, -1)
BETA = (-1, 2)
ALPHA_BETA = (1, 1)


def elementary(n, i, j, t=1):
    return QMatrix.elementary(n, i, j).scale(t)
