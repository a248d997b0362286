from django.apps import AppConfig


class DistributionConfig(AppConfig):
    name = 'distribution'
    verbose_name = 'Distinct-coupon distribution'
