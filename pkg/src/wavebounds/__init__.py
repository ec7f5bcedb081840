"""Stream solutions, Bernoulli curves and bound checks for steady water waves with vorticity."""
