from django.apps import AppConfig


class StabcodesConfig(AppConfig):
    name = 'stabcodes'
    verbose_name = 'Invertible stabilizer codes'
