from hypothesis import HealthCheck, settings

# numeric cases routinely outrun the default deadline on cold numba caches
settings.register_profile(
    "invsq",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("invsq")
