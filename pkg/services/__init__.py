"""Services: linear algebra, symmetry reduction, channel sampling, estimation and optimization."""
