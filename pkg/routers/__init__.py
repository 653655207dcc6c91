# Import all routers
from . import parameters, systems, relations, polynomials
