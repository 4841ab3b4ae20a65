"""Loss data analytics toolkit.

Parametric frequency/severity modeling, estimation under data
modifications, aggregate-loss distributions, credibility, risk measures
and reinsurance, multiplicative-tariff regression, and dependence
measures.
"""

__version__ = "0.1.0"
